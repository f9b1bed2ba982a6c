"""Planning and assembly of order-6m squares with a prescribed cardinality.

An order-6m square is an ``m x m`` circulant of order-6 blocks: block
``(i, i+j mod m)`` is ``|j> (x) Y`` for the block ``Y`` chosen for row ``i`` of
diagonal ``j``.  Distinct diagonals carry distinct prefixes, so the cardinality
is the sum over diagonals of the number of classes in the union of that
diagonal's blocks.  A plan records one block per (diagonal, row) together with
the class count it is expected to add.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable

from . import catalog
from .errors import (
    DisjointnessViolation,
    ImpossibleCardinality,
    NoDecomposition,
    OutOfRange,
    ParseError,
    SelfCheckFailed,
    UnknownGenerator,
    UnsupportedOrder12Cardinality,
    UnsupportedParameter,
)
from .state import PhaseClassKey, QuantumLatinSquare, phase_classes, verify_qls

LOW = "Low"
HIGH = "High"
EXPLICIT313 = "Explicit313"
BRANCHES = (LOW, HIGH, EXPLICIT313)

LOW_Y = (0, *range(2, 15), 16, 18, 20, 22, 24, 26, 36)
HIGH_Y = (0, *range(2, 15), 16, 18, 20, 22, 30, 34, 35, 36)
PLAIN_Y = (0, 36)

# row-1 contributions over W0 realised by the M_k squares
_HIGH_M = {35: "M1", 34: "M2", 30: "M3"}

# first W-tilde index handed out; row i >= 2 uses WTILDE_BASE + i - 1
WTILDE_BASE = 5


@dataclass(frozen=True)
class Diagonal:
    """Choices for diagonal ``j``: ``blocks[i]`` sits in block ``(i, i+j mod m)``."""

    j: int
    blocks: tuple[str, ...]
    y0: int
    y1: int
    y_rest: tuple[int, ...]
    predicted: int

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "blocks": list(self.blocks),
            "y0": self.y0,
            "y1": self.y1,
            "y_rest": list(self.y_rest),
            "predicted": self.predicted,
        }


@dataclass(frozen=True)
class BlockPlan:
    m: int
    branch: str
    diagonals: tuple[Diagonal, ...]
    predicted_cardinality: int

    @property
    def order(self) -> int:
        return 6 * self.m

    def totals(self) -> dict[str, int]:
        """Aggregate counts ``A`` (H1 rows), ``B`` (row-1 sum), ``C`` (padding blocks)."""
        return {
            "A": sum(d.y0 for d in self.diagonals),
            "B": sum(d.y1 for d in self.diagonals),
            "C": sum(sum(d.y_rest) for d in self.diagonals),
        }

    def block_ids(self) -> list[list[str]]:
        """Block identifiers laid out by block position ``(i, k)``."""
        m = self.m
        grid = [[""] * m for _ in range(m)]
        for d in self.diagonals:
            for i, name in enumerate(d.blocks):
                grid[i][(i + d.j) % m] = name
        return grid

    def to_json(self) -> dict:
        return {
            "kind": "plan",
            "m": self.m,
            "branch": self.branch,
            "predicted_cardinality": self.predicted_cardinality,
            "totals": self.totals(),
            "diagonals": [d.to_json() for d in self.diagonals],
        }

    @classmethod
    def from_json(cls, data: Any) -> BlockPlan:
        """Rebuild a plan and check it against the rules it was made under."""
        try:
            if data.get("kind", "plan") != "plan":
                raise ParseError(f"expected a plan document, got kind {data.get('kind')!r}")
            m, branch = int(data["m"]), data["branch"]
            diags = data["diagonals"]
            if branch == EXPLICIT313:
                p = explicit313_plan()
            elif branch in (LOW, HIGH):
                if len(diags) != m:
                    raise ParseError(f"plan for m={m} needs {m} diagonals, got {len(diags)}")
                diags = sorted(diags, key=lambda d: int(d["j"]))
                p = make_plan(
                    m, branch,
                    [int(d["y0"]) for d in diags],
                    [int(d["y1"]) for d in diags],
                    [tuple(int(x) for x in d["y_rest"]) for d in diags],
                )
            else:
                raise ParseError(f"unknown branch {branch!r}")
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ParseError(f"malformed plan: {exc}") from exc
        expected = p.to_json()
        stated = sorted(data["diagonals"], key=lambda d: d.get("j", 0))
        if p.m != m or stated != expected["diagonals"]:
            raise ParseError("plan blocks or predictions disagree with its y-values")
        if int(data.get("predicted_cardinality", p.predicted_cardinality)) != p.predicted_cardinality:
            raise ParseError("stated predicted_cardinality disagrees with the plan")
        return p


# ---------------------------------------------------------------------------
# block identifiers


def _row1_low(y: int) -> str:
    if y == 0:
        return "H0"
    if y == 36:
        return f"Wtilde:{WTILDE_BASE}"
    return f"Hell:{y}"


def _row1_high(y: int) -> str:
    if y == 0:
        return "W0"
    if y == 36:
        return f"Wtilde:{WTILDE_BASE}"
    if y in _HIGH_M:
        return _HIGH_M[y]
    return f"HellPrime:{y}"


def wtilde_for_row(i: int) -> str:
    return f"Wtilde:{WTILDE_BASE + i - 1}"


@lru_cache(maxsize=None)
def resolve_block(block_id: str) -> QuantumLatinSquare:
    """Map a plan block identifier to its order-6 square."""
    name, _, arg = block_id.partition(":")
    try:
        if name in ("H0", "H1"):
            return catalog.gen_H(name)
        if name == "W0":
            return catalog.gen_W0()
        if name in ("M1", "M2", "M3", "M4") and not arg:
            return catalog.gen_M(int(name[1]))
        if name == "Hell":
            return catalog.gen_Hell(int(arg))
        if name == "HellPrime":
            return catalog.gen_Hell_prime(int(arg))
        if name == "Wtilde":
            return catalog.gen_wtilde(int(arg))
    except ValueError as exc:
        if isinstance(exc, UnsupportedParameter):
            raise
        raise UnsupportedParameter(f"bad block parameter in {block_id!r}") from exc
    raise UnknownGenerator(block_id)


@lru_cache(maxsize=None)
def block_classes(block_id: str) -> frozenset[PhaseClassKey]:
    return frozenset(phase_classes(resolve_block(block_id).cells()))


# ---------------------------------------------------------------------------
# plan construction


def make_plan(
    m: int,
    branch: str,
    y0: Iterable[int],
    y1: Iterable[int],
    y_rest: Iterable[Iterable[int]],
) -> BlockPlan:
    """Plan from per-diagonal y-values, validating each against its branch."""
    if m < 2:
        raise UnsupportedParameter(f"m must be at least 2, got {m}")
    y0, y1 = list(y0), list(y1)
    y_rest = [tuple(r) for r in y_rest]
    if not (len(y0) == len(y1) == len(y_rest) == m):
        raise UnsupportedParameter("need one y-record per diagonal")
    diagonals = []
    for j in range(m):
        rest = y_rest[j]
        if len(rest) != m - 2 or any(x not in (0, 1) for x in rest):
            raise UnsupportedParameter(f"diagonal {j}: need {m - 2} padding flags in {{0, 1}}")
        if branch == LOW:
            if y0[j] not in (0, 1) or y1[j] not in LOW_Y:
                raise UnsupportedParameter(f"diagonal {j}: y-values outside the Low sets")
            row0 = "H1" if y0[j] else "H0"
            blocks = [row0, _row1_low(y1[j])]
            blocks += [wtilde_for_row(i) if rest[i - 2] else row0 for i in range(2, m)]
            predicted = 6 + 8 * y0[j] + y1[j] + 36 * sum(rest)
        elif branch == HIGH:
            if y0[j] != 0 or y1[j] not in HIGH_Y or any(x != 1 for x in rest):
                raise UnsupportedParameter(f"diagonal {j}: y-values outside the High sets")
            blocks = ["W0", _row1_high(y1[j])] + [wtilde_for_row(i) for i in range(2, m)]
            predicted = 36 * (m - 1) + y1[j]
        else:
            raise UnsupportedParameter(f"branch {branch!r} is not built from y-values")
        diagonals.append(Diagonal(j, tuple(blocks), y0[j], y1[j], rest, predicted))
    return BlockPlan(m, branch, tuple(diagonals), sum(d.predicted for d in diagonals))


@lru_cache(maxsize=None)
def explicit313_plan() -> BlockPlan:
    # diagonal j lists the blocks at (0, j), (1, 1+j), (2, 2+j) of the explicit square
    layout = (
        (("W0", "M2", "M1"), 105),
        (("W0", "M2", f"Wtilde:{WTILDE_BASE}"), 106),
        (("W0", "M3", f"Wtilde:{WTILDE_BASE}"), 102),
    )
    diagonals = tuple(Diagonal(j, blocks, 0, 0, (), n) for j, (blocks, n) in enumerate(layout))
    return BlockPlan(3, EXPLICIT313, diagonals, 313)


@lru_cache(maxsize=None)
def _dp_table(m: int, values: tuple[int, ...]) -> tuple[dict[int, int], ...]:
    """``table[k][s]``: fewest non-0/36 terms among ``k`` terms summing to ``s``."""
    table = [{0: 0}]
    for _ in range(m):
        cur: dict[int, int] = {}
        for s, e in table[-1].items():
            for v in values:
                ce = e + (v not in PLAIN_Y)
                if ce < cur.get(s + v, m + 1):
                    cur[s + v] = ce
        table.append(cur)
    return tuple(table)


def decompose(total: int, m: int, values: tuple[int, ...]) -> tuple[int, ...] | None:
    """Split ``total`` into ``m`` terms from ``values`` with the fewest exotic terms.

    Terms come out in nonincreasing order; ``None`` when no split exists.
    """
    table = _dp_table(m, values)
    if total not in table[m]:
        return None
    terms, s = [], total
    for k in range(m, 0, -1):
        for v in sorted(values, reverse=True):
            prev = s - v
            if prev in table[k - 1] and table[k - 1][prev] + (v not in PLAIN_Y) == table[k][s]:
                terms.append(v)
                s = prev
                break
    return tuple(terms)


def low_cap(m: int) -> int:
    return 36 * m * m - 22 * m - 18


def high_floor(m: int) -> int:
    return 36 * m * (m - 1)


def _plan_low(m: int, c: int) -> BlockPlan | None:
    best = None
    for n_pad in range(m * (m - 2), -1, -1):
        for n_h1 in range(m + 1):
            b = c - 6 * m - 8 * n_h1 - 36 * n_pad
            if b < 0:
                continue
            terms = decompose(b, m, LOW_Y)
            if terms is None:
                continue
            key = (sum(t not in PLAIN_Y for t in terms), -n_pad, n_h1)
            if best is None or key < best[0]:
                best = (key, n_h1, n_pad, terms)
    if best is None:
        return None
    _, n_h1, n_pad, terms = best
    y0 = [1 if j < n_h1 else 0 for j in range(m)]
    # padding blocks fill row 2 across all diagonals first, then row 3, ...
    rest = [[0] * (m - 2) for _ in range(m)]
    for slot in range(n_pad):
        rest[slot % m][slot // m] = 1
    return make_plan(m, LOW, y0, terms, rest)


def _plan_high(m: int, c: int) -> BlockPlan | None:
    b = c - high_floor(m)
    if b < 0:
        return None
    terms = decompose(b, m, HIGH_Y)
    if terms is None:
        return None
    return make_plan(m, HIGH, [0] * m, terms, [[1] * (m - 2)] * m)


def plan(m: int, c: int) -> BlockPlan:
    """Choose blocks for an order-``6m`` square of cardinality ``c``.

    The Low branch is preferred; the High branch covers the top of the range.
    """
    if not isinstance(m, int) or m < 2:
        raise UnsupportedParameter(f"m must be an integer >= 2, got {m!r}")
    if c == 6 * m + 1:
        raise ImpossibleCardinality(f"no QLS({6 * m}) has cardinality {c} = {6 * m} + 1")
    if not 6 * m <= c <= 36 * m * m:
        raise OutOfRange(f"cardinality {c} outside [{6 * m}, {36 * m * m}]")
    if m == 3 and c == 313:
        return explicit313_plan()
    p = None
    if m == 2 or c <= low_cap(m):
        p = _plan_low(m, c)
    if p is None and (m == 2 or c >= high_floor(m)):
        p = _plan_high(m, c)
    if p is not None:
        return p
    if m == 2:
        raise UnsupportedOrder12Cardinality(
            f"cardinality {c} at order 12 is not reached by the circulant construction; "
            "order 12 needs the separate order-4m construction"
        )
    raise NoDecomposition(f"no decomposition for m={m}, c={c}")  # pragma: no cover


def random_plan(m: int, rng: random.Random, branch: str | None = None) -> BlockPlan:
    """Random valid Low or High plan, for property tests."""
    branch = branch or rng.choice((LOW, HIGH))
    if branch == LOW:
        return make_plan(
            m, LOW,
            [rng.randint(0, 1) for _ in range(m)],
            [rng.choice(LOW_Y) for _ in range(m)],
            [[rng.randint(0, 1) for _ in range(m - 2)] for _ in range(m)],
        )
    return make_plan(m, HIGH, [0] * m, [rng.choice(HIGH_Y) for _ in range(m)], [[1] * (m - 2)] * m)


# ---------------------------------------------------------------------------
# assembly


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("QLS_THREADS", "1")))
    except ValueError:
        return 1


def _resolve_all(ids: list[str]) -> dict[str, QuantumLatinSquare]:
    threads = thread_count()
    if threads == 1 or len(ids) == 1:
        return {b: resolve_block(b) for b in ids}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return dict(zip(ids, pool.map(resolve_block, ids)))


def check_additivity(p: BlockPlan) -> None:
    """Raise if any diagonal's class union differs from its predicted size."""
    for d in p.diagonals:
        union: set[PhaseClassKey] = set()
        for b in d.blocks:
            union |= block_classes(b)
        if len(union) != d.predicted:
            raise DisjointnessViolation(
                f"diagonal {d.j}: blocks {list(d.blocks)} give {len(union)} classes, plan says {d.predicted}"
            )


def assemble(p: BlockPlan) -> QuantumLatinSquare:
    ids = p.block_ids()
    squares = _resolve_all(sorted({b for row in ids for b in row}))
    check_additivity(p)
    grid = [[squares[b] for b in row] for row in ids]
    return catalog.circulant_assemble(grid, f"QLS{p.order}_c{p.predicted_cardinality}")


def build(m: int, c: int, self_check: bool | None = None) -> QuantumLatinSquare:
    """Square of order ``6m`` with cardinality exactly ``c``.

    ``self_check`` defaults to on for orders up to 36 and re-verifies the
    result from scratch.
    """
    p = plan(m, c)
    q = assemble(p)
    if self_check is None:
        self_check = 6 * m <= 36
    if self_check:
        run_self_check(q, c)
    return q


def run_self_check(q: QuantumLatinSquare, c: int) -> None:
    report = verify_qls(q)
    if not report.ok:
        raise SelfCheckFailed(f"assembled square fails orthonormality: {report.to_json()}")
    if report.cardinality != c:
        raise SelfCheckFailed(f"assembled square has cardinality {report.cardinality}, wanted {c}")


def feasibility_table(m: int) -> list[dict]:
    """Planner outcome for every ``c`` in ``[6m, 36m^2]`` without assembling."""
    rows = []
    for c in range(6 * m, 36 * m * m + 1):
        try:
            p = plan(m, c)
        except (ImpossibleCardinality, UnsupportedOrder12Cardinality, NoDecomposition) as exc:
            rows.append({"c": c, "feasible": False, "error": exc.code})
            continue
        rows.append({
            "c": c,
            "feasible": True,
            "branch": p.branch,
            **p.totals(),
            "y1": [d.y1 for d in p.diagonals],
        })
    return rows
