"""Named order-4 and order-6 building blocks and their product construction.

Order-6 objects live in ``H_2 (x) H_3`` with basis ``|ij>`` at index ``3*i + j``.
Every generator is a pure, memoised function of its parameters.

A handful of printed matrices are not orthonormal as typeset.  Their
generators take ``printed=True`` to reproduce the typeset entries; the default
returns the corrected object with its name recorded in ``repaired``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .errors import DisjointnessViolation, ShapeMismatch, UnsupportedParameter
from .exact import OMEGA, OMEGA2, ONE, ZERO, Amplitude, as_rational, rad_sqrt
from .state import (
    QuantumLatinSquare,
    RowQLR,
    StateVector,
    basis_state,
    inner,
    phase_classes,
    tensor,
)

F = Fraction
Block = tuple[tuple[StateVector, ...], ...]

# index of |ij> in H_2 (x) H_3
I00, I01, I02, I10, I11, I12 = range(6)
SPACE6 = (2, 3)


def v6(coeffs: dict[int, object]) -> StateVector:
    return StateVector(6, ((k, Amplitude.of(a)) for k, a in coeffs.items()))


def v2(a: object, b: object) -> StateVector:
    return StateVector(2, ((0, Amplitude.of(a)), (1, Amplitude.of(b))))


def v3(a: object, b: object, c: object) -> StateVector:
    return StateVector(3, ((0, Amplitude.of(a)), (1, Amplitude.of(b)), (2, Amplitude.of(c))))


def _norm(a: Fraction):
    return rad_sqrt(1 / (1 + a * a))


def from_blocks(blocks: Sequence[Sequence[Block]]) -> tuple[tuple[StateVector, ...], ...]:
    """Flatten a block matrix of equal-height rows into a grid."""
    rows = []
    for block_row in blocks:
        h = len(block_row[0])
        for r in range(h):
            rows.append(tuple(v for blk in block_row for v in blk[r]))
    return tuple(rows)


def _square(blocks: Sequence[Sequence[Block]], name: str, repaired: Sequence[str] = ()) -> QuantumLatinSquare:
    return QuantumLatinSquare.of(from_blocks(blocks), SPACE6, name, repaired)


# ---------------------------------------------------------------------------
# two- and three-dimensional block families

_FAMILY_SPANS = {
    "A": (I00, I01),
    "B": (I10, I11),
    "C": (I02, I12),
    "D": (I00, I01, I02),
    "E": (I10, I11, I12),
}


@lru_cache(maxsize=None)
def gen_block_family(name: str, a: Fraction | int | str = 0) -> Block:
    """Rotation blocks: ``A,B,C`` are 2x2, ``D,E`` are 3x3 with a fixed basis diagonal."""
    if name not in _FAMILY_SPANS:
        raise UnsupportedParameter(f"unknown block family {name!r}")
    a = as_rational(a)
    n = _norm(a)
    span = _FAMILY_SPANS[name]
    if len(span) == 2:
        e0, e1 = span
        p = v6({e0: n, e1: n * a})
        q = v6({e0: n * -a, e1: n})
        return ((p, q), (q, p))
    e, f0, f1 = span
    fixed = basis_state(e, 6)
    p = v6({f0: n, f1: n * a})
    q = v6({f0: n * -a, f1: n})
    return ((fixed, p, q), (q, fixed, p), (p, q, fixed))


def A(a=0) -> Block:
    return gen_block_family("A", a)


def B(a=0) -> Block:
    return gen_block_family("B", a)


def C(a=0) -> Block:
    return gen_block_family("C", a)


def D(a=0) -> Block:
    return gen_block_family("D", a)


def E(a=0) -> Block:
    return gen_block_family("E", a)


def _fourier(span: tuple[int, int, int], k: int) -> StateVector:
    s = rad_sqrt(F(1, 3))
    powers = [ONE, OMEGA, OMEGA2]
    return v6({span[0]: s, span[1]: powers[k % 3] * s, span[2]: powers[(2 * k) % 3] * s})


def _fourier_block(span: tuple[int, int, int]) -> list[list[StateVector]]:
    f = [_fourier(span, k) for k in range(3)]
    return [[f[1], f[2], f[0]], [f[2], f[0], f[1]], [f[0], f[1], f[2]]]


@lru_cache(maxsize=None)
def gen_F1() -> Block:
    return tuple(tuple(r) for r in _fourier_block((I00, I01, I02)))


@lru_cache(maxsize=None)
def gen_G1(printed: bool = False) -> Block:
    rows = _fourier_block((I10, I11, I12))
    if printed:
        s = rad_sqrt(F(1, 3))
        rows[2][0] = v6({I00: s, I11: s, I12: s})
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def gen_F2(printed: bool = False) -> Block:
    """Real QLS(3) on ``L(|00>,|01>,|02>)``.

    The typeset second and third entries have norm 7/9; the corrected pair
    splits ``(sqrt3/2)|00> - (1/2)|01>`` and ``|02>`` evenly.
    """
    first = v6({I00: F(-1, 2), I01: rad_sqrt(3).scale(F(-1, 2))})
    if printed:
        x, y, z = rad_sqrt(3).scale(F(1, 6)), F(-1, 6), rad_sqrt(6).scale(F(1, 3))
    else:
        x, y, z = rad_sqrt(6).scale(F(1, 4)), rad_sqrt(2).scale(F(-1, 4)), rad_sqrt(2).scale(F(1, 2))
    minus = v6({I00: x, I01: y, I02: -z})
    plus = v6({I00: x, I01: y, I02: z})
    return ((first, minus, plus), (minus, plus, first), (plus, first, minus))


# ---------------------------------------------------------------------------
# product construction


def product_construct(u: RowQLR, v: RowQLR, name: str | None = None) -> QuantumLatinSquare:
    """Square of order ``m*n`` from an ``m x n`` and an ``n x m`` row-rectangle.

    Block ``(i, j)`` (``n x m`` cells) holds ``u[i][(j+k) % n] (x) v[j][(i+l) % m]``
    at offset ``(k, l)``.
    """
    m, n = u.rows, u.cols
    if v.rows != n or v.cols != m:
        raise ShapeMismatch(f"need an {n}x{m} second rectangle, got {v.rows}x{v.cols}")
    if any(c.dim != n for c in u.cells()) or any(c.dim != m for c in v.cells()):
        raise ShapeMismatch("rectangle cells have the wrong dimension")
    grid = [[None] * (m * n) for _ in range(m * n)]
    for i in range(m):
        for j in range(n):
            for k in range(n):
                for l in range(m):
                    grid[i * n + k][j * m + l] = tensor(u.grid[i][(j + k) % n], v.grid[j][(i + l) % m])
    return QuantumLatinSquare.of(grid, (n, m), name)


# ---------------------------------------------------------------------------
# row-quantum Latin rectangles


@lru_cache(maxsize=None)
def gen_U() -> RowQLR:
    return RowQLR.of([
        [v2(1, 0), v2(0, 1)],
        [v2(F(3, 5), F(4, 5)), v2(F(-4, 5), F(3, 5))],
    ])


@lru_cache(maxsize=None)
def gen_V1() -> RowQLR:
    return RowQLR.of([
        [v2(1, 0), v2(0, 1)],
        [v2(F(5, 13), F(12, 13)), v2(F(-12, 13), F(5, 13))],
    ])


@lru_cache(maxsize=None)
def gen_V2() -> RowQLR:
    return RowQLR.of([
        [v2(F(3, 5), F(4, 5)), v2(F(-4, 5), F(3, 5))],
        [v2(F(5, 13), F(12, 13)), v2(F(-12, 13), F(5, 13))],
    ])


@lru_cache(maxsize=None)
def gen_U0() -> RowQLR:
    return RowQLR.of([
        [v2(1, 0), v2(0, 1)],
        [v2(F(3, 5), F(4, 5)), v2(F(4, 5), F(-3, 5))],
        [v2(F(4, 5), F(3, 5)), v2(F(3, 5), F(-4, 5))],
    ])


@lru_cache(maxsize=None)
def gen_V0() -> RowQLR:
    return RowQLR.of([
        [v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)],
        [v3(F(1, 3), F(2, 3), F(2, 3)), v3(F(2, 3), F(1, 3), F(-2, 3)), v3(F(2, 3), F(-2, 3), F(1, 3))],
    ])


@lru_cache(maxsize=None)
def gen_Ui(i: int) -> RowQLR:
    """Three rotation rows with slopes ``3i+2, 3i+3, 3i+4``."""
    if i < 0:
        raise UnsupportedParameter(f"index must be nonnegative, got {i}")
    rows = []
    for t in (3 * i + 2, 3 * i + 3, 3 * i + 4):
        n = rad_sqrt(F(1, t * t + 1))
        rows.append([v2(n, n * t), v2(n * t, -n)])
    return RowQLR.of(rows)


@lru_cache(maxsize=None)
def gen_wtilde(i: int) -> QuantumLatinSquare:
    """Maximal-cardinality square; distinct indices give disjoint class sets."""
    return product_construct(gen_Ui(i), gen_V0(), name=f"Wtilde_{i}")


# ---------------------------------------------------------------------------
# QLS(4) inside L(|00>,|01>,|10>,|11>)

EMBED4 = (I00, I01, I10, I11)


@dataclass(frozen=True)
class QLS4:
    """4x4 quantum Latin square whose cells live in ``L(|00>,|01>,|10>,|11>)``."""

    grid: tuple[tuple[StateVector, ...], ...]
    name: str = ""
    repaired: tuple[str, ...] = ()

    def cells(self) -> list[StateVector]:
        return [v for row in self.grid for v in row]

    def block(self, r: int, c: int) -> Block:
        return tuple(tuple(self.grid[2 * r + k][2 * c + l] for l in range(2)) for k in range(2))

    def is_valid(self) -> bool:
        lines = list(self.grid) + [tuple(r[j] for r in self.grid) for j in range(4)]
        return all(
            all(x.is_unit() for x in line)
            and all(inner(x, y).is_zero() for x, y in combinations(line, 2))
            for line in lines
        ) and all(set(x.support) <= set(EMBED4) for x in self.cells())


def embed4(v: StateVector) -> StateVector:
    """Map ``H_2 (x) H_2`` into ``H_2 (x) H_3`` by ``|ab> -> |ab>``."""
    if v.dim != 4:
        raise ShapeMismatch("expected a vector of C^4")
    return StateVector(6, ((EMBED4[k], a) for k, a in v.entries))


def _qls4_from_blocks(b00: Block, b01: Block, b10: Block, b11: Block, name: str, repaired=()) -> QLS4:
    return QLS4(from_blocks([[b00, b01], [b10, b11]]), name, tuple(repaired))


@lru_cache(maxsize=None)
def _xprime_blocks() -> dict[str, Block]:
    def k(**c):
        return v6({{"00": I00, "01": I01, "10": I10, "11": I11}[key[1:]]: val for key, val in c.items()})

    return {
        "X'00": (
            (k(_11=1), k(_10=1)),
            (k(_00=F(-4, 5), _10=F(3, 5)), k(_01=F(-4, 5), _11=F(3, 5))),
        ),
        "X'01": (
            (k(_00=F(-12, 13), _01=F(5, 13)), k(_00=F(5, 13), _01=F(12, 13))),
            (k(_00=F(3, 13), _01=F(36, 65), _10=F(4, 13), _11=F(48, 65)),
             k(_00=F(-36, 65), _01=F(3, 13), _10=F(-48, 65), _11=F(4, 13))),
        ),
        "X'10": (
            (k(_01=1), k(_00=1)),
            (k(_00=F(3, 5), _10=F(4, 5)), k(_01=F(3, 5), _11=F(4, 5))),
        ),
        "X'11": (
            (k(_10=F(-12, 13), _11=F(5, 13)), k(_10=F(5, 13), _11=F(12, 13))),
            (k(_00=F(-4, 13), _01=F(-48, 65), _10=F(3, 13), _11=F(36, 65)),
             k(_00=F(48, 65), _01=F(-4, 13), _10=F(-36, 65), _11=F(3, 13))),
        ),
        "X''00": (
            (k(_10=F(-4, 5), _11=F(3, 5)), k(_10=F(3, 5), _11=F(4, 5))),
            (k(_00=F(-12, 25), _01=F(-16, 25), _10=F(9, 25), _11=F(12, 25)),
             k(_00=F(16, 25), _01=F(-12, 25), _10=F(-12, 25), _11=F(9, 25))),
        ),
        "X''10": (
            (k(_00=F(-4, 5), _01=F(3, 5)), k(_00=F(3, 5), _01=F(4, 5))),
            (k(_00=F(9, 25), _01=F(12, 25), _10=F(12, 25), _11=F(16, 25)),
             k(_00=F(-12, 25), _01=F(9, 25), _10=F(-16, 25), _11=F(12, 25))),
        ),
    }


def xprime_block(name: str) -> Block:
    return _xprime_blocks()[name]


@lru_cache(maxsize=None)
def gen_Xp() -> QLS4:
    b = _xprime_blocks()
    return _qls4_from_blocks(b["X'00"], b["X'01"], b["X'10"], b["X'11"], "Xp")


@lru_cache(maxsize=None)
def gen_Xpp() -> QLS4:
    b = _xprime_blocks()
    return _qls4_from_blocks(b["X''00"], b["X'01"], b["X''10"], b["X'11"], "Xpp")


@lru_cache(maxsize=None)
def gen_qls4(c: int, variant: str = "Xp") -> QLS4:
    """QLS(4) in the 4-dim subspace with cardinality ``c`` in ``{4, 6, 8, 16}``."""
    if c == 4:
        return _qls4_from_blocks(A(0), B(0), B(0), A(0), "QLS4_4")
    if c == 6:
        return _qls4_from_blocks(A(1), B(0), B(0), A(0), "QLS4_6")
    if c == 8:
        return _qls4_from_blocks(A(1), B(0), B(1), A(0), "QLS4_8")
    if c == 16:
        if variant == "Xp":
            return gen_Xp()
        if variant == "Xpp":
            return gen_Xpp()
        raise UnsupportedParameter(f"unknown 16-element variant {variant!r}")
    raise UnsupportedParameter(f"no QLS(4) of cardinality {c}")


# ---------------------------------------------------------------------------
# order-6 layouts


@lru_cache(maxsize=None)
def gen_L(a, b, d, x: QLS4) -> QuantumLatinSquare:
    """``[[C_a, X00, X01], [X10, C_b, X11], [X00, X10, C_d]]``.

    Raises :class:`DisjointnessViolation` if a ``C`` class coincides with a class of ``x``.
    """
    a, b, d = (as_rational(t) for t in (a, b, d))
    c_classes = phase_classes(v for t in (a, b, d) for row in C(t) for v in row)
    if c_classes & phase_classes(x.cells()):
        raise DisjointnessViolation("C-family classes meet the QLS(4) classes")
    x00, x01, x10, x11 = x.block(0, 0), x.block(0, 1), x.block(1, 0), x.block(1, 1)
    name = f"L_{a},{b},{d}[{x.name}]"
    return _square([[C(a), x00, x01], [x10, C(b), x11], [x00, x10, C(d)]], name, x.repaired)


@lru_cache(maxsize=None)
def gen_W_abd(a, b, d) -> QuantumLatinSquare:
    """Layout mixing both 16-element QLS(4)s; cardinality ``24 + 2*|{a, b, d}|``."""
    a, b, d = (as_rational(t) for t in (a, b, d))
    x = _xprime_blocks()
    return _square(
        [[C(a), x["X'00"], x["X'01"]], [x["X''10"], C(b), x["X'11"]], [x["X''00"], x["X'10"], C(d)]],
        f"W_{a},{b},{d}",
    )


@lru_cache(maxsize=None)
def gen_W3() -> QuantumLatinSquare:
    return _square([[D(0), E(0)], [E(0), gen_F1()]], "W3")


@lru_cache(maxsize=None)
def gen_W4(printed: bool = False) -> QuantumLatinSquare:
    return _square([[D(0), E(0)], [gen_G1(printed), D(1)]], "W4", () if printed else ("G1",))


@lru_cache(maxsize=None)
def gen_W5() -> QuantumLatinSquare:
    return _square([[A(0), B(0), C(0)], [C(1), A(0), B(1)], [B(2), C(2), A(1)]], "W5")


@lru_cache(maxsize=None)
def gen_H0() -> QuantumLatinSquare:
    return _square([[A(0), B(0), C(0)], [B(0), C(0), A(0)], [C(0), A(0), B(0)]], "H0")


@lru_cache(maxsize=None)
def gen_H1() -> QuantumLatinSquare:
    return _square([[A(0), B(0), C(0)], [C(0), A(1), B(0)], [B(1), C(1), A(2)]], "H1")


def gen_H(which: str) -> QuantumLatinSquare:
    if which == "H0":
        return gen_H0()
    if which == "H1":
        return gen_H1()
    raise UnsupportedParameter(f"unknown H square {which!r}")


# ---------------------------------------------------------------------------
# exact matrices


@dataclass(frozen=True)
class Matrix:
    """Exact square matrix; ``rows[i][j]`` is the entry in row ``i``, column ``j``."""

    rows: tuple[tuple[Amplitude, ...], ...]
    name: str = ""
    repaired: bool = False

    @classmethod
    def of(cls, rows, name: str = "", repaired: bool = False) -> Matrix:
        return cls(tuple(tuple(Amplitude.of(x) for x in r) for r in rows), name, repaired)

    @property
    def size(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> tuple[Amplitude, ...]:
        return tuple(r[j] for r in self.rows)

    def __matmul__(self, other: Matrix) -> Matrix:
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    x = self.rows[i][k]
                    if x.is_zero():
                        continue
                    y = other.rows[k][j]
                    if not y.is_zero():
                        acc = acc + x * y
                row.append(acc)
            out.append(tuple(row))
        return Matrix(tuple(out))

    def adjoint(self) -> Matrix:
        n = self.size
        return Matrix(tuple(tuple(self.rows[j][i].conj() for j in range(n)) for i in range(n)))

    def is_identity(self) -> bool:
        return all(self.rows[i][j] == (ONE if i == j else ZERO) for i in range(self.size) for j in range(self.size))

    def is_orthonormal(self) -> bool:
        """Exact check of ``M^H M == I`` (columns form an orthonormal basis)."""
        return (self.adjoint() @ self).is_identity()

    def row_norm_sq(self, i: int):
        return sum((x.mod_sq() for x in self.rows[i]), ZERO.re)

    def column_vectors(self, basis: Sequence[int], dim: int) -> list[StateVector]:
        """Columns as vectors ``sum_k M[k][j] |basis[k]>`` of ``C^dim``."""
        return [StateVector(dim, ((basis[k], self.rows[k][j]) for k in range(self.size))) for j in range(self.size)]

    def to_json(self) -> dict:
        return {
            "kind": "matrix",
            "name": self.name,
            "repaired": self.repaired,
            "rows": [[x.to_json() for x in r] for r in self.rows],
        }


def _rat_matrix(text: str, name: str, repaired: bool = False) -> Matrix:
    return Matrix.of([[F(t) for t in line.split()] for line in text.strip().splitlines()], name, repaired)


_X_TEXT = {
    1: """
        0 0 0 2/3 2/3 1/3
        0 0 0 1/3 -2/3 2/3
        0 0 0 -2/3 1/3 2/3
        0 0 1 0 0 0
        1 0 0 0 0 0
        0 1 0 0 0 0""",
    2: """
        0 0 1 0 0 0
        1 0 0 0 0 0
        0 1 0 0 0 0
        0 0 0 2/3 2/3 1/3
        0 0 0 1/3 -2/3 2/3
        0 0 0 -2/3 1/3 2/3""",
    3: """
        0 4/5 0 2/5 1/5 2/5
        0 0 4/5 -2/5 2/5 1/5
        4/5 0 0 1/5 2/5 -2/5
        0 -3/5 0 8/15 4/15 8/15
        0 0 -3/5 -8/15 8/15 4/15
        -3/5 0 0 4/15 8/15 -8/15""",
    4: """
        0 3/5 0 8/15 4/15 8/15
        0 0 3/5 -8/15 8/15 4/15
        3/5 0 0 4/15 8/15 -8/15
        0 4/5 0 -2/5 -1/5 -2/5
        0 0 4/5 2/5 -2/5 -1/5
        4/5 0 0 -1/5 -2/5 2/5""",
    5: """
        3/5 0 0 4/15 8/15 8/15
        0 3/5 0 8/15 4/15 -8/15
        0 0 3/5 8/15 -8/15 4/15
        -4/5 0 0 1/5 2/5 2/5
        0 -4/5 0 2/5 1/5 -2/5
        0 0 -4/5 2/5 -2/5 1/5""",
    6: """
        4/5 0 0 1/5 2/5 2/5
        0 4/5 0 2/5 1/5 -2/5
        0 0 4/5 2/5 -2/5 1/5
        3/5 0 0 -4/15 -8/15 -8/15
        0 3/5 0 -8/15 -4/15 8/15
        0 0 3/5 -8/15 8/15 -4/15""",
}

_J_TEXT = {
    1: """
        1 0 0 0 0 0
        0 2/3 -2/3 1/3 0 0
        0 1/3 2/3 2/3 0 0
        0 2/3 1/3 -2/3 0 0
        0 0 0 0 3/5 -4/5
        0 0 0 0 4/5 3/5""",
    2: """
        1 0 0 0 0 0
        0 1 0 0 0 0
        0 0 1/2 1/2 1/2 1/2
        0 0 1/2 -1/2 1/2 -1/2
        0 0 1/2 1/2 -1/2 -1/2
        0 0 1/2 -1/2 -1/2 1/2""",
    3: """
        1 0 0 0 0 0
        0 1 0 0 0 0
        0 0 1 0 0 0
        0 0 0 2/3 -2/3 1/3
        0 0 0 1/3 2/3 2/3
        0 0 0 2/3 1/3 -2/3""",
    4: """
        1 0 0 0 0 0
        0 2/3 -2/3 1/3 0 0
        0 1/3 2/3 2/3 0 0
        0 2/3 1/3 -2/3 0 0
        0 0 0 0 -4/5 3/5
        0 0 0 0 3/5 4/5""",
}

_J3_PRINTED = """
        1 0 0 0 0 0
        0 1 0 0 0 0
        0 0 1 0 0 0
        0 0 0 2/3 -2/3 1/6
        0 0 0 1/3 2/3 2/3
        0 0 0 2/3 1/3 -2/5"""


@lru_cache(maxsize=None)
def gen_X(k: int) -> Matrix:
    if k not in _X_TEXT:
        raise UnsupportedParameter(f"X_k defined for k in 1..6, got {k}")
    return _rat_matrix(_X_TEXT[k], f"X{k}")


@lru_cache(maxsize=None)
def gen_J(k: int, printed: bool = False) -> Matrix:
    if k not in _J_TEXT:
        raise UnsupportedParameter(f"J_k defined for k in 1..4, got {k}")
    if k == 3:
        if printed:
            return _rat_matrix(_J3_PRINTED, "J3")
        return _rat_matrix(_J_TEXT[3], "J3", repaired=True)
    return _rat_matrix(_J_TEXT[k], f"J{k}")


def _square_from_matrices(mats: Sequence[Matrix], name: str, repaired=()) -> QuantumLatinSquare:
    rows = [m.column_vectors(range(6), 6) for m in mats]
    return QuantumLatinSquare.of(rows, SPACE6, name, repaired)


@lru_cache(maxsize=None)
def gen_W0() -> QuantumLatinSquare:
    """Row ``i`` holds the columns of ``X_{i+1}``."""
    return _square_from_matrices([gen_X(k) for k in range(1, 7)], "W0")


@lru_cache(maxsize=None)
def gen_M(k: int) -> QuantumLatinSquare:
    """``W0`` with every cell moved by the orthogonal change of basis ``X1 J_k X1^-1``."""
    x1 = gen_X(1)
    if not x1.is_orthonormal():  # pragma: no cover - X1 is a fixed rational matrix
        raise ArithmeticError("X1 must be orthonormal for its adjoint to be its inverse")
    j = gen_J(k)
    q = x1 @ j @ x1.adjoint()
    return _square_from_matrices([q @ gen_X(i) for i in range(1, 7)], f"M{k}", ("J3",) if j.repaired else ())


# ---------------------------------------------------------------------------
# the alpha basis of L(|00>,|01>,|10>,|11>)

_S_PRINTED_LOWER = (
    # rows 2..4, columns 2..4 as (integer coefficient, power of omega); scale 1/sqrt(3)
    ((1, 0), (-2, 0), (2, 0)),
    ((2, 0), (-1, 1), (-2, 2)),
    ((2, 0), (2, 2), (1, 1)),
)

# same layout, scale 1/3: the real rotation [[1,-2,2],[2,-1,-2],[2,2,1]]/3
# with its columns multiplied by 1, omega, omega^2
_S_REPAIRED_LOWER = (
    ((1, 0), (-2, 1), (2, 2)),
    ((2, 0), (-1, 1), (-2, 2)),
    ((2, 0), (2, 1), (1, 2)),
)


@lru_cache(maxsize=None)
def gen_S(printed: bool = False) -> Matrix:
    """Unitary fixing ``|00>``; its columns define the alpha basis.

    As typeset the lower block has column norms 3; the repaired block keeps
    the printed magnitudes 1, 2, 2 and the printed middle row.
    """
    powers = (ONE, OMEGA, OMEGA2)
    if printed:
        lower, s = _S_PRINTED_LOWER, Amplitude.of(rad_sqrt(F(1, 3)))
    else:
        lower, s = _S_REPAIRED_LOWER, Amplitude.of(F(1, 3))
    rows = [[ONE, ZERO, ZERO, ZERO]]
    for line in lower:
        rows.append([ZERO] + [s * powers[p] * c for c, p in line])
    return Matrix.of(rows, "S", repaired=not printed)


@lru_cache(maxsize=None)
def alpha_basis() -> tuple[StateVector, ...]:
    return tuple(gen_S().column_vectors(EMBED4, 6))


@lru_cache(maxsize=None)
def gen_alpha_cyclic() -> QLS4:
    a1, a2, a3, a4 = alpha_basis()
    return QLS4((
        (a1, a2, a3, a4),
        (a2, a3, a4, a1),
        (a3, a4, a1, a2),
        (a4, a1, a2, a3),
    ), "AlphaQLS4", ("S",))


@lru_cache(maxsize=None)
def gen_alpha_mixed() -> QLS4:
    """Alpha square with sqrt(2) mixtures; the fourth row swaps the first two entries."""
    a1, a2, a3, a4 = alpha_basis()
    h = Amplitude.of(rad_sqrt(F(1, 2)))
    p34, m34 = (a3 + a4).scale(h), (a3 - a4).scale(h)
    p12, m12 = (a1 + a2).scale(h), (a1 - a2).scale(h)
    return QLS4((
        (a1, a2, a3, a4),
        (a2, a1, a4, a3),
        (p34, m34, p12, m12),
        (m34, p34, m12, p12),
    ), "AlphaMixedQLS4", ("S", "alpha-mixed row 4"))


# ---------------------------------------------------------------------------
# squares with a prescribed number of new classes

_H_RECIPES: dict[int, tuple[str, tuple[int, int, int]]] = {
    2: ("L0", (2, 0, 0)), 4: ("L0", (2, 3, 0)), 6: ("L0", (2, 3, 4)),
    8: ("L1", (0, 0, 0)), 10: ("L1", (2, 0, 0)), 12: ("L1", (2, 3, 0)), 14: ("L1", (2, 3, 4)),
    16: ("L2", (0, 0, 0)), 18: ("L2", (2, 0, 0)), 20: ("L2", (2, 3, 0)), 22: ("L2", (2, 3, 4)),
    3: ("L3", (0, 0, 0)), 5: ("L3", (2, 0, 0)), 7: ("L3", (2, 3, 0)), 9: ("L3", (2, 3, 4)),
    11: ("L4", (2, 3, 0)), 13: ("L4", (2, 3, 4)),
    24: ("W", (2, 3, 0)), 26: ("W", (2, 3, 4)),
    36: ("Wtilde", (5, 0, 0)),
}

HELL_VALUES = tuple(sorted(_H_RECIPES))
HELL_PRIME_VALUES = tuple(v for v in HELL_VALUES if v not in (24, 26))


@lru_cache(maxsize=None)
def _base_qls4(kind: str) -> QLS4:
    if kind == "L0":
        return _qls4_from_blocks(A(0), B(0), B(0), A(0), "A0B0")
    if kind == "L1":
        return _qls4_from_blocks(A(3), B(2), B(3), A(4), "A3B2B3A4")
    if kind == "L2":
        return gen_Xpp()
    if kind == "L3":
        return gen_alpha_cyclic()
    if kind == "L4":
        return gen_alpha_mixed()
    raise UnsupportedParameter(kind)  # pragma: no cover


def _hell_square(ell: int) -> QuantumLatinSquare:
    kind, params = _H_RECIPES[ell]
    if kind == "W":
        return gen_W_abd(*params)
    if kind == "Wtilde":
        return gen_wtilde(params[0])
    return gen_L(*params, _base_qls4(kind))


@lru_cache(maxsize=None)
def gen_Hell(ell: int) -> QuantumLatinSquare:
    """Square with exactly ``ell`` classes outside ``H0`` and ``H1``."""
    if ell not in _H_RECIPES:
        raise UnsupportedParameter(f"no H_ell for ell={ell}")
    return _hell_square(ell)


@lru_cache(maxsize=None)
def gen_Hell_prime(ell: int) -> QuantumLatinSquare:
    """Square with exactly ``ell`` classes outside ``W0``."""
    if ell not in HELL_PRIME_VALUES:
        raise UnsupportedParameter(f"no H'_ell for ell={ell}")
    return _hell_square(ell)


# ---------------------------------------------------------------------------
# order-6 cardinality menu

MENU_VALUES = (6, 8, 9, 10, 11, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30, 36)


@lru_cache(maxsize=None)
def gen_U_repeated() -> RowQLR:
    """3x2 rectangle of cardinality 4 (first row repeated)."""
    u0 = gen_U0()
    return RowQLR.of([u0.grid[0], u0.grid[1], u0.grid[0]])


@lru_cache(maxsize=None)
def menu_square(c: int) -> QuantumLatinSquare:
    """An order-6 square of cardinality ``c`` for each ``c`` in :data:`MENU_VALUES`."""
    recipes = {
        6: lambda: gen_L(0, 0, 0, gen_qls4(4)),
        8: lambda: gen_L(2, 0, 0, gen_qls4(4)),
        9: gen_W3,
        10: lambda: gen_L(2, 3, 4, gen_qls4(4)),
        11: gen_W4,
        12: lambda: gen_L(2, 3, 4, gen_qls4(6)),
        14: lambda: gen_L(2, 3, 4, gen_qls4(8)),
        16: gen_W5,
        18: lambda: gen_L(0, 0, 0, gen_qls4(16)),
        20: lambda: gen_L(2, 0, 0, gen_qls4(16)),
        22: lambda: gen_L(2, 3, 4, gen_qls4(16)),
        24: lambda: product_construct(gen_U_repeated(), gen_V0(), name="U_rep x V0"),
        26: lambda: gen_W_abd(0, 0, 0),
        28: lambda: gen_W_abd(2, 0, 0),
        30: lambda: gen_W_abd(2, 3, 4),
        36: gen_W0,
    }
    if c not in recipes:
        raise UnsupportedParameter(f"no order-6 menu entry for cardinality {c}")
    return recipes[c]()


# ---------------------------------------------------------------------------
# explicit order-18 square of cardinality 313


def circulant_assemble(blocks: Sequence[Sequence[QuantumLatinSquare]], name: str | None = None) -> QuantumLatinSquare:
    """Place ``|j - i mod m> (x) Y[i][j]`` in block ``(i, j)``."""
    m = len(blocks)
    size = 6 * m
    grid: list[list[StateVector]] = [[None] * size for _ in range(size)]  # type: ignore[list-item]
    for i in range(m):
        for j in range(m):
            prefix = basis_state((j - i) % m, m)
            y = blocks[i][j]
            for r in range(6):
                for c in range(6):
                    grid[6 * i + r][6 * j + c] = tensor(prefix, y.grid[r][c])
    repaired = sorted({tag for row in blocks for y in row for tag in y.repaired})
    return QuantumLatinSquare.of(grid, (m, 2, 3), name, repaired)


@lru_cache(maxsize=None)
def gen_QLS18_313() -> QuantumLatinSquare:
    w0, m1, m2, m3, wt = gen_W0(), gen_M(1), gen_M(2), gen_M(3), gen_wtilde(5)
    return circulant_assemble([[w0, w0, w0], [m3, m2, m2], [wt, wt, m1]], "QLS18_313")
