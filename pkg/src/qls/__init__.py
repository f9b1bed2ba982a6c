"""Exact construction and verification of quantum Latin squares of order 6m."""

from __future__ import annotations

from .builder import BlockPlan, assemble, build, plan
from .exact import Amplitude, RadReal, rad_sqrt
from .state import QuantumLatinSquare, StateVector, census, set_relations, verify_qls

__all__ = [
    "Amplitude",
    "BlockPlan",
    "QuantumLatinSquare",
    "RadReal",
    "StateVector",
    "assemble",
    "build",
    "census",
    "plan",
    "rad_sqrt",
    "set_relations",
    "verify_qls",
]
__version__ = "0.1.0"
