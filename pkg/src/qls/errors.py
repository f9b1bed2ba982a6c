"""Error taxonomy shared by every module.

Each concrete error carries a stable ``code`` used in CLI payloads and its
own ``exit_code`` used as the process status (1 is reserved for the base class).
"""

from __future__ import annotations


class QLSError(Exception):
    code = "QLSError"
    exit_code = 1


class DivisionByZero(QLSError, ZeroDivisionError):
    code = "DivisionByZero"
    exit_code = 14


class RadicandTooLarge(QLSError, ValueError):
    code = "RadicandTooLarge"
    exit_code = 15


class TooManyRadicals(QLSError, ValueError):
    code = "TooManyRadicals"
    exit_code = 16


class DimensionMismatch(QLSError, ValueError):
    code = "DimensionMismatch"
    exit_code = 11


class IndexOutOfRange(QLSError, IndexError):
    code = "IndexOutOfRange"
    exit_code = 13


class ShapeMismatch(QLSError, ValueError):
    code = "ShapeMismatch"
    exit_code = 12


class UnsupportedParameter(QLSError, ValueError):
    code = "UnsupportedParameter"
    exit_code = 7


class UnknownGenerator(QLSError, KeyError):
    code = "UnknownGenerator"
    exit_code = 6

    def __str__(self) -> str:
        # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class DisjointnessViolation(QLSError):
    code = "DisjointnessViolation"
    exit_code = 9


class ImpossibleCardinality(QLSError, ValueError):
    code = "ImpossibleCardinality"
    exit_code = 2


class OutOfRange(QLSError, ValueError):
    code = "OutOfRange"
    exit_code = 3


class UnsupportedOrder12Cardinality(QLSError, ValueError):
    code = "UnsupportedOrder12Cardinality"
    exit_code = 4


class NoDecomposition(QLSError):
    code = "NoDecomposition"
    exit_code = 10


class SelfCheckFailed(QLSError):
    code = "SelfCheckFailed"
    exit_code = 8


class ParseError(QLSError, ValueError):
    code = "ParseError"
    exit_code = 5
