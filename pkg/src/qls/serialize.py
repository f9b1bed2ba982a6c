"""JSON documents for squares, arrays, rectangles, matrices and plans.

Every document is an object with a ``kind``.  Each cell is the dense list of
its amplitudes in the exact ``{"re", "im"}`` form, so a document round-trips
to an identical object.  :func:`dumps` is
deterministic: same object, same bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .builder import BlockPlan
from .errors import ParseError
from .exact import Amplitude
from .state import QuantumLatinSquare, RowQLR, StateVector

SQUARE = "square"
ARRAY = "array"
RECTANGLE = "rectangle"
MATRIX = "matrix"
PLAN = "plan"


def cell_to_json(v: StateVector) -> list:
    return v.to_json()


def cell_from_json(data: Any, dim: int) -> StateVector:
    if not isinstance(data, list) or len(data) != dim:
        raise ParseError(f"cell must be a list of {dim} amplitudes")
    entries = []
    for k, item in enumerate(data):
        try:
            entries.append((k, Amplitude.from_json(item)))
        except (ValueError, TypeError, AttributeError) as exc:
            raise ParseError(f"bad amplitude at index {k}: {exc}") from exc
    return StateVector(dim, entries)


def _grid_to_json(grid) -> list:
    return [[cell_to_json(v) for v in row] for row in grid]


def _grid_from_json(data: Any, dim: int) -> tuple[tuple[StateVector, ...], ...]:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ParseError("cells must be a nonempty list of rows")
    if len({len(r) for r in data}) != 1:
        raise ParseError("rows of cells have different lengths")
    return tuple(tuple(cell_from_json(c, dim) for c in row) for row in data)


def square_to_json(q: QuantumLatinSquare) -> dict:
    return {
        "kind": SQUARE,
        "name": q.name,
        "order": q.order,
        "space": list(q.space),
        "repaired": list(q.repaired),
        "cells": _grid_to_json(q.grid),
    }


def array_to_json(grid, name: str | None, repaired=(), kind: str = ARRAY) -> dict:
    """Non-square arrays: order-6 blocks, embedded order-4 squares, rectangles."""
    dim = grid[0][0].dim
    return {
        "kind": kind,
        "name": name,
        "dim": dim,
        "rows": len(grid),
        "cols": len(grid[0]),
        "repaired": list(repaired),
        "cells": _grid_to_json(grid),
    }


def to_document(obj: Any, name: str | None = None) -> dict:
    """JSON document for any catalog or builder object."""
    from .catalog import QLS4, Matrix

    if isinstance(obj, QuantumLatinSquare):
        return square_to_json(obj)
    if isinstance(obj, QLS4):
        return array_to_json(obj.grid, obj.name, obj.repaired)
    if isinstance(obj, RowQLR):
        return array_to_json(obj.grid, name, (), RECTANGLE)
    if isinstance(obj, Matrix):
        return obj.to_json()
    if isinstance(obj, BlockPlan):
        return obj.to_json()
    if isinstance(obj, GridDocument):
        return array_to_json(obj.grid, obj.name, obj.repaired, obj.kind)
    if isinstance(obj, tuple) and obj and isinstance(obj[0], tuple):
        return array_to_json(obj, name)
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def square_from_json(data: Any) -> QuantumLatinSquare:
    if not isinstance(data, dict) or data.get("kind", SQUARE) != SQUARE:
        raise ParseError("expected a square document")
    try:
        order = int(data["order"])
        grid = _grid_from_json(data["cells"], order)
        if len(grid) != order or len(grid[0]) != order:
            raise ParseError(f"order {order} square must have {order}x{order} cells")
        return QuantumLatinSquare.of(
            grid, tuple(int(x) for x in data.get("space", ())), data.get("name"), tuple(data.get("repaired", ()))
        )
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed square: {exc}") from exc


@dataclass(frozen=True)
class GridDocument:
    """A parsed array or rectangle document."""

    kind: str
    name: str | None
    repaired: tuple[str, ...]
    grid: tuple[tuple[StateVector, ...], ...]

    def cells(self) -> list[StateVector]:
        return [v for row in self.grid for v in row]


def matrix_from_json(data: Any):
    from .catalog import Matrix

    try:
        rows = [[Amplitude.from_json(x) for x in r] for r in data["rows"]]
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"malformed matrix: {exc}") from exc
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ParseError("matrix must be square and nonempty")
    return Matrix.of(rows, data.get("name", ""), bool(data.get("repaired", False)))


def from_document(data: Any):
    """Object for any document kind."""
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object")
    kind = data.get("kind", SQUARE)
    if kind == SQUARE:
        return square_from_json(data)
    if kind == MATRIX:
        return matrix_from_json(data)
    if kind == PLAN:
        return BlockPlan.from_json(data)
    _, grid = grid_from_document(data)
    return GridDocument(kind, data.get("name"), tuple(data.get("repaired", ())), grid)


def grid_from_document(data: Any) -> tuple[str, tuple[tuple[StateVector, ...], ...]]:
    """``(kind, grid)`` for any cell-bearing document."""
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object")
    kind = data.get("kind", SQUARE)
    if kind == SQUARE:
        return kind, square_from_json(data).grid
    if kind in (ARRAY, RECTANGLE):
        try:
            return kind, _grid_from_json(data["cells"], int(data["dim"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed {kind}: {exc}") from exc
    raise ParseError(f"document kind {kind!r} carries no cells")


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def read_document(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def write_document(path: str | Path, doc: Any) -> None:
    Path(path).write_text(dumps(doc) + "\n")
