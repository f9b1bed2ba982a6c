"""State vectors, phase classes and the exact cardinality census."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, ShapeMismatch, TooManyRadicals
from .exact import ONE, ZERO, Amplitude, Number


class StateVector:
    """Vector in ``C^dim`` stored sparsely as ``(index, amplitude)`` pairs.

    Unit norm is a contract of the catalog, not enforced here: a square under
    verification may legitimately hold a broken cell.
    """

    __slots__ = ("dim", "entries", "_hash", "_map")

    def __init__(self, dim: int, entries: Iterable[tuple[int, Amplitude]] = ()) -> None:
        if dim <= 0:
            raise ValueError(f"dimension must be positive, got {dim}")
        cleaned = []
        for k, a in sorted(entries, key=lambda e: e[0]):
            if not 0 <= k < dim:
                raise IndexOutOfRange(f"index {k} outside dimension {dim}")
            if not isinstance(a, Amplitude):
                a = Amplitude.of(a)
            if not a.is_zero():
                cleaned.append((k, a))
        self.dim = dim
        self.entries: tuple[tuple[int, Amplitude], ...] = tuple(cleaned)
        self._hash: int | None = None
        self._map: dict[int, Amplitude] | None = None

    @classmethod
    def _raw(cls, dim: int, entries: tuple[tuple[int, Amplitude], ...]) -> StateVector:
        v = cls.__new__(cls)
        v.dim = dim
        v.entries = entries
        v._hash = None
        v._map = None
        return v

    @classmethod
    def from_amps(cls, amps: Sequence[Number | Amplitude]) -> StateVector:
        return cls(len(amps), ((k, Amplitude.of(a)) for k, a in enumerate(amps)))

    @property
    def amps(self) -> tuple[Amplitude, ...]:
        dense = [ZERO] * self.dim
        for k, a in self.entries:
            dense[k] = a
        return tuple(dense)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.entries)

    def get(self, k: int) -> Amplitude:
        m = self._map
        if m is None:
            m = self._map = dict(self.entries)
        return m.get(k, ZERO)

    def scale(self, z: Amplitude | Number) -> StateVector:
        z = Amplitude.of(z)
        return StateVector(self.dim, ((k, a * z) for k, a in self.entries))

    def norm_sq(self):
        return inner(self, self).re

    def is_unit(self) -> bool:
        return inner(self, self) == ONE

    def __add__(self, other: StateVector) -> StateVector:
        if self.dim != other.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")
        acc = dict(self.entries)
        for k, a in other.entries:
            acc[k] = acc[k] + a if k in acc else a
        return StateVector(self.dim, acc.items())

    def __neg__(self) -> StateVector:
        return StateVector._raw(self.dim, tuple((k, -a) for k, a in self.entries))

    def __sub__(self, other: StateVector) -> StateVector:
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash((self.dim, self.entries))
        return h

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {a}" for k, a in self.entries)
        return f"StateVector(dim={self.dim}, {{{body}}})"

    def to_json(self) -> list[dict]:
        return [a.to_json() for a in self.amps]

    @classmethod
    def from_json(cls, data: list) -> StateVector:
        return cls.from_amps([Amplitude.from_json(a) for a in data])


class PhaseClassKey(NamedTuple):
    """Canonical representative of a phase class: first nonzero entry is 1."""

    canon: StateVector


def basis_state(i: int, n: int) -> StateVector:
    """Computational basis vector ``|i>`` of ``C^n``."""
    if not 0 <= i < n:
        raise IndexOutOfRange(f"basis index {i} outside dimension {n}")
    return StateVector._raw(n, ((i, ONE),))


def ket(n: int, coeffs: dict[int, Number | Amplitude]) -> StateVector:
    return StateVector(n, ((k, Amplitude.of(a)) for k, a in coeffs.items()))


def tensor(u: StateVector, v: StateVector) -> StateVector:
    """Kronecker product; component ``a*v.dim + b`` is ``u[a]*v[b]``."""
    n = v.dim
    out = []
    for a, x in u.entries:
        base = a * n
        if x == ONE:
            out.extend((base + b, y) for b, y in v.entries)
        else:
            out.extend((base + b, x * y) for b, y in v.entries)
    return StateVector._raw(u.dim * n, tuple(out))


def inner(u: StateVector, v: StateVector) -> Amplitude:
    """``<u|v>``, conjugate-linear in ``u``."""
    if u.dim != v.dim:
        raise DimensionMismatch(f"inner product of dims {u.dim} and {v.dim}")
    return _inner(u, v)


@lru_cache(maxsize=1 << 18)
def _inner(u: StateVector, v: StateVector) -> Amplitude:
    if len(u.entries) > len(v.entries):
        return _inner(v, u).conj()
    acc = ZERO
    for k, a in u.entries:
        b = v.get(k)
        if b.is_zero():
            continue
        acc = acc + a.conj() * b
    return acc


def is_orthogonal(u: StateVector, v: StateVector) -> bool:
    if u.dim != v.dim:
        raise DimensionMismatch(f"{u.dim} vs {v.dim}")
    if not set(u.support).intersection(v.support):
        return True
    return _inner(u, v).is_zero()


@lru_cache(maxsize=1 << 17)
def _canonical(v: StateVector) -> StateVector:
    if not v.entries:
        raise ValueError("zero vector has no phase class")
    pivot = v.entries[0][1]
    if pivot == ONE:
        return v
    inv = pivot.inverse()
    return StateVector._raw(v.dim, tuple((k, a * inv) for k, a in v.entries))


def canonicalize(v: StateVector) -> PhaseClassKey:
    """Divide ``v`` by its first nonzero amplitude."""
    return PhaseClassKey(_canonical(v))


def same_up_to_phase(u: StateVector, v: StateVector) -> bool:
    """Division-free proportionality test ``u_j v_k == u_k v_j`` for all ``j, k``.

    For unit vectors proportionality forces a unit-modulus factor.
    """
    if u.dim != v.dim:
        raise DimensionMismatch(f"{u.dim} vs {v.dim}")
    if u.support != v.support:
        # some u_j != 0 = v_j, paired with any k where v_k != 0
        return False
    pairs = [(a, b) for (_, a), (_, b) in zip(u.entries, v.entries)]
    return all(uj * vk == uk * vj for (uj, vj), (uk, vk) in combinations(pairs, 2))


def census(cells: Iterable[StateVector]) -> dict[PhaseClassKey, int]:
    """Partition ``cells`` into phase classes, keyed in order of first appearance."""
    counts: dict[PhaseClassKey, int] = {}
    fallback: list[tuple[StateVector, PhaseClassKey]] = []
    dim = None
    for v in cells:
        if dim is None:
            dim = v.dim
        elif v.dim != dim:
            raise DimensionMismatch(f"census over mixed dims {dim} and {v.dim}")
        try:
            key = canonicalize(v)
        except TooManyRadicals:
            key = _fallback_key(v, counts, fallback)
        counts[key] = counts.get(key, 0) + 1
    return counts


def _fallback_key(v: StateVector, counts: dict[PhaseClassKey, int], fallback: list) -> PhaseClassKey:
    for rep, key in fallback:
        if same_up_to_phase(rep, v):
            return key
    for key in counts:
        if same_up_to_phase(key.canon, v):
            return key
    key = PhaseClassKey(v)
    fallback.append((v, key))
    return key


def cardinality(cells: Iterable[StateVector]) -> int:
    return len(census(cells))


def phase_classes(cells: Iterable[StateVector]) -> set[PhaseClassKey]:
    return set(census(cells))


@dataclass(frozen=True)
class SetRelations:
    common: int
    a_only: int
    b_only: int

    def to_json(self) -> dict[str, int]:
        return {"common": self.common, "a_only": self.a_only, "b_only": self.b_only}


def set_relations(a: Iterable[StateVector], b: Iterable[StateVector]) -> SetRelations:
    ca, cb = phase_classes(_cells(a)), phase_classes(_cells(b))
    common = len(ca & cb)
    return SetRelations(common, len(ca) - common, len(cb) - common)


def _cells(obj) -> Iterable[StateVector]:
    if hasattr(obj, "cells"):
        return obj.cells()
    return obj


@dataclass(frozen=True)
class RowQLR:
    """Rectangular array whose rows are orthonormal sets."""

    grid: tuple[tuple[StateVector, ...], ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence[StateVector]]) -> RowQLR:
        grid = tuple(tuple(r) for r in rows)
        if not grid or len({len(r) for r in grid}) != 1:
            raise ShapeMismatch("rows must be nonempty and of equal length")
        return cls(grid)

    @property
    def rows(self) -> int:
        return len(self.grid)

    @property
    def cols(self) -> int:
        return len(self.grid[0])

    def cells(self) -> list[StateVector]:
        return [v for row in self.grid for v in row]

    def rows_orthonormal(self) -> bool:
        return all(_orthonormal(row) for row in self.grid)


def _orthonormal(vectors: Sequence[StateVector]) -> bool:
    return all(v.is_unit() for v in vectors) and all(
        is_orthogonal(u, v) for u, v in combinations(vectors, 2)
    )


@dataclass(frozen=True)
class QuantumLatinSquare:
    """``n x n`` grid of vectors of ``C^n``.

    ``space`` lists tensor-factor dimensions (informational). ``repaired``
    names printed entries that had to be corrected to be orthonormal.
    """

    grid: tuple[tuple[StateVector, ...], ...]
    space: tuple[int, ...] = ()
    name: str | None = None
    repaired: tuple[str, ...] = field(default=())

    @classmethod
    def of(cls, rows: Sequence[Sequence[StateVector]], space: Sequence[int] = (), name: str | None = None,
           repaired: Sequence[str] = ()) -> QuantumLatinSquare:
        grid = tuple(tuple(r) for r in rows)
        n = len(grid)
        if n == 0 or any(len(r) != n for r in grid):
            raise ShapeMismatch("a quantum Latin square needs an n x n grid")
        if any(v.dim != n for r in grid for v in r):
            raise ShapeMismatch(f"cells of an order-{n} square must live in C^{n}")
        return cls(grid, tuple(space), name, tuple(repaired))

    @property
    def order(self) -> int:
        return len(self.grid)

    def cells(self) -> list[StateVector]:
        return [v for row in self.grid for v in row]

    def row(self, i: int) -> tuple[StateVector, ...]:
        return self.grid[i]

    def column(self, j: int) -> tuple[StateVector, ...]:
        return tuple(r[j] for r in self.grid)

    def cardinality(self) -> int:
        return cardinality(self.cells())


@dataclass
class Report:
    order: int
    norm_failures: list[tuple[int, int]]
    row_failures: list[tuple[int, int, int]]
    column_failures: list[tuple[int, int, int]]
    cardinality: int

    @property
    def ok(self) -> bool:
        return not (self.norm_failures or self.row_failures or self.column_failures)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "order": self.order,
            "cardinality": self.cardinality,
            "norm_failures": [{"row": r, "col": c} for r, c in self.norm_failures],
            "row_failures": [{"row": r, "cols": [a, b]} for r, a, b in self.row_failures],
            "column_failures": [{"col": c, "rows": [a, b]} for c, a, b in self.column_failures],
        }


def verify_qls(q: QuantumLatinSquare) -> Report:
    """Exact check that every row and column is an orthonormal basis."""
    return verify_grid(q.grid)


def verify_grid(grid: Sequence[Sequence[StateVector]], columns: bool = True) -> Report:
    """Orthonormality report for any rectangular grid; ``columns=False`` checks rows only."""
    n_rows, n_cols = len(grid), len(grid[0]) if grid else 0
    norm_failures = [(r, c) for r in range(n_rows) for c in range(n_cols) if not grid[r][c].is_unit()]
    row_failures = [
        (r, a, b) for r in range(n_rows) for a, b in combinations(range(n_cols), 2)
        if not is_orthogonal(grid[r][a], grid[r][b])
    ]
    column_failures = [] if not columns else [
        (c, a, b) for c in range(n_cols) for a, b in combinations(range(n_rows), 2)
        if not is_orthogonal(grid[a][c], grid[b][c])
    ]
    return Report(n_rows, norm_failures, row_failures, column_failures, cardinality(v for r in grid for v in r))
