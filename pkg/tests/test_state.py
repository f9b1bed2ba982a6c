from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qls import catalog
from qls.errors import DimensionMismatch, IndexOutOfRange, ShapeMismatch
from qls.exact import I, OMEGA, ONE, ZERO, Amplitude, rad_sqrt
from qls.state import (
    QuantumLatinSquare,
    RowQLR,
    StateVector,
    basis_state,
    canonicalize,
    cardinality,
    census,
    inner,
    is_orthogonal,
    ket,
    same_up_to_phase,
    set_relations,
    tensor,
    verify_grid,
    verify_qls,
)


def vec(*amps) -> StateVector:
    return StateVector.from_amps(list(amps))


def test_basis_state():
    assert basis_state(0, 2) == vec(1, 0)
    assert basis_state(2, 3) == vec(0, 0, 1)
    with pytest.raises(IndexOutOfRange):
        basis_state(3, 3)


def test_tensor_kronecker_order():
    assert tensor(basis_state(1, 2), basis_state(0, 3)) == basis_state(3, 6)
    assert tensor(basis_state(0, 2), basis_state(2, 3)) == basis_state(2, 6)
    u = vec(F(3, 5), F(4, 5))
    assert tensor(u, basis_state(1, 2)) == vec(0, F(3, 5), 0, F(4, 5))
    # general amplitudes on both sides
    a, b = vec(OMEGA, 0, I), vec(F(1, 2), F(-1, 3))
    t = tensor(a, b)
    for i in range(3):
        for j in range(2):
            assert t.get(2 * i + j) == a.get(i) * b.get(j)


def test_inner_examples():
    assert inner(basis_state(0, 2), basis_state(1, 2)) == ZERO
    v = vec(rad_sqrt(F(1, 2)), Amplitude(0, rad_sqrt(F(1, 2))))
    assert inner(v, v) == ONE
    assert inner(vec(F(3, 5), F(4, 5)), vec(F(4, 5), F(-3, 5))) == ZERO
    # conjugate-linear in the first slot
    assert inner(vec(I, 0), vec(1, 0)) == Amplitude(0, -1)
    with pytest.raises(DimensionMismatch):
        inner(basis_state(0, 2), basis_state(0, 3))


def test_canonicalize_examples():
    h = rad_sqrt(F(1, 2))
    v = StateVector(2, ((0, Amplitude(0, h)), (1, Amplitude(0, h))))
    assert canonicalize(v).canon == vec(1, 1)
    assert canonicalize(basis_state(2, 3).scale(OMEGA)).canon == vec(0, 0, 1)
    w = StateVector(6, ((0, Amplitude.of(F(-4, 5))), (3, Amplitude.of(F(3, 5)))))
    assert canonicalize(w).canon == vec(1, 0, 0, F(-3, 4), 0, 0)


def test_same_up_to_phase_examples():
    assert same_up_to_phase(basis_state(0, 2), basis_state(0, 2).scale(OMEGA))
    assert not same_up_to_phase(basis_state(0, 2), basis_state(1, 2))
    # proportional but not by a unit-modulus factor: still one ray
    assert same_up_to_phase(vec(1, 1), vec(2, 2))
    # supports with a zero in different places
    assert not same_up_to_phase(vec(1, 0, 1), vec(1, 1, 0))


def test_census_examples():
    assert cardinality(catalog.gen_W0().cells()) == 36
    assert cardinality(catalog.gen_W3().cells()) == 9
    classical = [[basis_state((i + j) % 6, 6) for j in range(6)] for i in range(6)]
    assert cardinality(v for row in classical for v in row) == 6
    counts = census(v for row in classical for v in row)
    assert sorted(counts.values()) == [6] * 6
    with pytest.raises(DimensionMismatch):
        census([basis_state(0, 2), basis_state(0, 3)])


def test_census_key_order_is_first_appearance():
    cells = [basis_state(2, 3), basis_state(0, 3), basis_state(2, 3).scale(I), basis_state(1, 3)]
    keys = list(census(cells))
    assert [k.canon for k in keys] == [basis_state(2, 3), basis_state(0, 3), basis_state(1, 3)]


def test_verify_examples():
    r = verify_qls(catalog.gen_W0())
    assert r.ok and r.cardinality == 36
    r = verify_qls(catalog.gen_W_abd(2, 3, 4))
    assert r.ok and r.cardinality == 30


def test_verify_flags_duplicated_row_vector():
    q = catalog.gen_H0()
    grid = [list(r) for r in q.grid]
    grid[0][1] = grid[0][0]
    report = verify_qls(QuantumLatinSquare.of(grid, (2, 3)))
    assert not report.ok
    assert (0, 0, 1) in report.row_failures
    assert any(c == 1 for c, _, _ in report.column_failures)
    assert report.to_json()["ok"] is False


def test_verify_flags_norm():
    grid = [list(r) for r in catalog.gen_H0().grid]
    grid[2][2] = grid[2][2].scale(2)
    report = verify_qls(QuantumLatinSquare.of(grid))
    assert report.norm_failures == [(2, 2)]


def test_set_relations_examples():
    w0, m1, m3, m4 = catalog.gen_W0(), catalog.gen_M(1), catalog.gen_M(3), catalog.gen_M(4)
    assert set_relations(w0, m3).common == 6
    assert set_relations(m1, m4).common == 13
    rel = set_relations(catalog.gen_wtilde(1), catalog.gen_wtilde(2))
    assert (rel.common, rel.a_only, rel.b_only) == (0, 36, 36)


def test_shapes():
    with pytest.raises(ShapeMismatch):
        QuantumLatinSquare.of([[basis_state(0, 2)]])
    with pytest.raises(ShapeMismatch):
        RowQLR.of([[basis_state(0, 2)], []])
    assert catalog.gen_U0().rows_orthonormal()
    assert verify_grid(catalog.gen_U0().grid, columns=False).ok


def test_json_roundtrip():
    v = ket(3, {0: OMEGA, 2: F(1, 2)})
    assert StateVector.from_json(v.to_json()) == v
    assert len(v.to_json()) == 3


def test_is_orthogonal_disjoint_supports():
    assert is_orthogonal(basis_state(0, 6), basis_state(5, 6))


# phase classes behave like rays under every unit phase we use
PHASES = [Amplitude.of(-1), I, OMEGA, OMEGA * I]


@pytest.mark.parametrize("make", [catalog.gen_W0, catalog.gen_W3, catalog.gen_QLS18_313,
                                  lambda: catalog.gen_Hell(13), lambda: catalog.gen_M(2)])
def test_canonical_key_agrees_with_cross_product(make):
    cells = make().cells()
    if len(cells) > 100:
        cells = cells[::5]
    keys = [canonicalize(v) for v in cells]
    for a, u in enumerate(cells):
        for b, v in enumerate(cells):
            assert same_up_to_phase(u, v) == (keys[a] == keys[b])


@given(st.lists(st.sampled_from(PHASES), min_size=36, max_size=36))
@settings(max_examples=25, deadline=None)
def test_census_phase_invariance(phases):
    cells = catalog.gen_W5().cells()
    moved = [v.scale(p) for v, p in zip(cells, phases)]
    assert cardinality(moved) == 16
    assert set(census(moved)) == set(census(cells))


@given(st.data())
@settings(max_examples=20, deadline=None)
def test_equivalence_relation(data):
    cells = catalog.gen_W4().cells()
    sample = data.draw(st.lists(st.sampled_from(cells), min_size=3, max_size=12))
    sample = [v.scale(data.draw(st.sampled_from(PHASES))) for v in sample]
    rel = {(a, b): same_up_to_phase(sample[a], sample[b]) for a in range(len(sample)) for b in range(len(sample))}
    n = len(sample)
    for a in range(n):
        assert rel[a, a]
        for b in range(n):
            assert rel[a, b] == rel[b, a]
            for c in range(n):
                if rel[a, b] and rel[b, c]:
                    assert rel[a, c]
