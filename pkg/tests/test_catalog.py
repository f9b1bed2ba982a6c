from __future__ import annotations

from fractions import Fraction as F
from itertools import combinations

import pytest

from qls import catalog
from qls.catalog import EMBED4, I00, I01, I02, I10, I11, I12
from qls.errors import DisjointnessViolation, ShapeMismatch, UnsupportedParameter
from qls.exact import Amplitude, rad_sqrt
from qls.state import (
    RowQLR,
    basis_state,
    cardinality,
    is_orthogonal,
    phase_classes,
    set_relations,
    verify_grid,
    verify_qls,
)


def classes(obj):
    return phase_classes(obj.cells() if hasattr(obj, "cells") else [v for r in obj for v in r])


def block_cells(block):
    return [v for row in block for v in row]


# --- block families ------------------------------------------------------------


def test_A0_is_classical():
    b = catalog.A(0)
    assert b == ((basis_state(I00, 6), basis_state(I01, 6)), (basis_state(I01, 6), basis_state(I00, 6)))


def test_C1_amplitudes():
    h = Amplitude.of(rad_sqrt(F(1, 2)))
    for v in block_cells(catalog.C(1)):
        assert set(v.support) == {I02, I12}
        assert all(a == h or a == -h for _, a in v.entries)


def test_family_census():
    cells = [v for a in (0, 1, 2) for v in block_cells(catalog.A(a))]
    assert cardinality(cells) == 6


@pytest.mark.parametrize("name, span", [
    ("A", {I00, I01}), ("B", {I10, I11}), ("C", {I02, I12}),
    ("D", {I00, I01, I02}), ("E", {I10, I11, I12}),
])
@pytest.mark.parametrize("a", [0, 1, 2, F(-3, 7)])
def test_families_stay_in_span(name, span, a):
    block = catalog.gen_block_family(name, a)
    assert verify_grid(block).ok
    for v in block_cells(block):
        assert set(v.support) <= span


def test_unknown_family():
    with pytest.raises(UnsupportedParameter):
        catalog.gen_block_family("Q", 0)


def test_fourier_blocks():
    assert verify_grid(catalog.gen_F1()).ok
    assert verify_grid(catalog.gen_G1()).ok
    assert not verify_grid(catalog.gen_G1(printed=True)).ok
    assert verify_grid(catalog.gen_F2()).ok
    printed = catalog.gen_F2(printed=True)
    assert {str(v.norm_sq()) for v in block_cells(printed)} == {"1", "7/9"}


# --- product construction and fixed squares ------------------------------------


def test_product_construct_classical():
    u = RowQLR.of([[basis_state(0, 2), basis_state(1, 2)]] * 3)
    v = RowQLR.of([[basis_state(0, 3), basis_state(1, 3), basis_state(2, 3)]] * 2)
    q = catalog.product_construct(u, v)
    r = verify_qls(q)
    assert r.ok and r.cardinality == 6


def test_product_construct_shape_errors():
    with pytest.raises(ShapeMismatch):
        catalog.product_construct(catalog.gen_U(), catalog.gen_V0())


def test_product_cardinality_multiplies():
    assert cardinality(catalog.gen_U_repeated().cells()) == 4
    q = catalog.product_construct(catalog.gen_U_repeated(), catalog.gen_V0())
    assert verify_qls(q).cardinality == 4 * 6


def test_xprime_matches_product():
    xp = catalog.product_construct(catalog.gen_U(), catalog.gen_V1())
    xpp = catalog.product_construct(catalog.gen_U(), catalog.gen_V2())
    assert phase_classes(catalog.embed4(v) for v in xp.cells()) == classes(catalog.gen_Xp())
    assert phase_classes(catalog.embed4(v) for v in xpp.cells()) == classes(catalog.gen_Xpp())
    assert catalog.gen_Xp().is_valid() and catalog.gen_Xpp().is_valid()


@pytest.mark.parametrize("make, c", [
    (catalog.gen_W3, 9), (catalog.gen_W4, 11), (catalog.gen_W5, 16),
    (catalog.gen_W0, 36), (catalog.gen_H0, 6), (catalog.gen_H1, 14),
])
def test_fixed_squares(make, c):
    r = verify_qls(make())
    assert r.ok and r.cardinality == c


def test_W4_records_repair():
    assert catalog.gen_W4().repaired == ("G1",)
    assert not verify_qls(catalog.gen_W4(printed=True)).ok


def test_wtilde():
    for i in (0, 1, 7):
        r = verify_qls(catalog.gen_wtilde(i))
        assert r.ok and r.cardinality == 36
    assert set_relations(catalog.gen_wtilde(5), catalog.gen_W0()).common == 0
    with pytest.raises(UnsupportedParameter):
        catalog.gen_Ui(-1)


# --- matrices ---------------------------------------------------------------------


def test_X_columns_across_matrices():
    xs = [catalog.gen_X(k) for k in range(1, 7)]
    for j in range(6):
        cols = [x.column_vectors(range(6), 6)[j] for x in xs]
        assert all(v.is_unit() for v in cols)
        assert all(is_orthogonal(u, v) for u, v in combinations(cols, 2))


def test_matrix_suite():
    for k in range(1, 7):
        assert catalog.gen_X(k).is_orthonormal()
    for k in range(1, 5):
        assert catalog.gen_J(k).is_orthonormal()
    assert catalog.gen_J(3).repaired and not catalog.gen_J(1).repaired
    assert catalog.gen_S().is_orthonormal()
    with pytest.raises(UnsupportedParameter):
        catalog.gen_X(7)
    with pytest.raises(UnsupportedParameter):
        catalog.gen_J(0)


def test_printed_S_is_not_unitary():
    s = catalog.gen_S(printed=True)
    col = s.column(1)
    assert sum((a.mod_sq() for a in col), rad_sqrt(0)) == 3


def test_repaired_S_keeps_printed_middle_row():
    printed, repaired = catalog.gen_S(printed=True), catalog.gen_S()
    scale = rad_sqrt(3)
    for j in range(4):
        # printed entries carry 1/sqrt(3), repaired ones 1/3
        assert repaired.rows[2][j] == printed.rows[2][j] * Amplitude.of(scale.scale(F(1, 3)))


def test_M_squares():
    for k in range(1, 5):
        r = verify_qls(catalog.gen_M(k))
        assert r.ok and r.cardinality == 36


def test_M_overlaps():
    w0 = catalog.gen_W0()
    m = {k: catalog.gen_M(k) for k in range(1, 5)}
    assert [set_relations(w0, m[k]).common for k in range(1, 5)] == [1, 2, 6, 1]
    assert set_relations(m[1], m[4]).common == 13


# --- order-4 squares and order-6 layouts --------------------------------------------


@pytest.mark.parametrize("c, variant", [(4, "Xp"), (6, "Xp"), (8, "Xp"), (16, "Xp"), (16, "Xpp")])
def test_qls4(c, variant):
    x = catalog.gen_qls4(c, variant)
    assert x.is_valid()
    assert cardinality(x.cells()) == c
    assert all(set(v.support) <= set(EMBED4) for v in x.cells())


def test_qls4_bad_params():
    with pytest.raises(UnsupportedParameter):
        catalog.gen_qls4(5)
    with pytest.raises(UnsupportedParameter):
        catalog.gen_qls4(16, "Y")


@pytest.mark.parametrize("abd, x, c", [
    ((0, 0, 0), 4, 6), ((2, 0, 0), 4, 8), ((2, 3, 4), 4, 10), ((2, 3, 4), 16, 22), ((0, 0, 0), 16, 18),
])
def test_L_cardinality(abd, x, c):
    r = verify_qls(catalog.gen_L(*abd, catalog.gen_qls4(x)))
    assert r.ok and r.cardinality == c


def test_L_rejects_shared_classes():
    # C_0 cells are |02>, |12>; a QLS(4) never touches them, so force a clash by
    # handing gen_L a fake "QLS(4)" whose cells include |02>
    fake = catalog.QLS4(tuple(tuple(basis_state(I02, 6) for _ in range(4)) for _ in range(4)), "fake")
    with pytest.raises(DisjointnessViolation):
        catalog.gen_L(0, 0, 0, fake)


@pytest.mark.parametrize("abd", [(0, 0, 0), (2, 0, 0), (2, 3, 0), (2, 3, 4), (1, 1, 5)])
def test_W_abd_formula(abd):
    r = verify_qls(catalog.gen_W_abd(*abd))
    assert r.ok and r.cardinality == 24 + 2 * len(set(abd))


def test_alpha_basis():
    alpha = catalog.alpha_basis()
    assert alpha[0] == basis_state(I00, 6)
    assert all(v.is_unit() for v in alpha)
    assert all(is_orthogonal(u, v) for u, v in combinations(alpha, 2))
    assert catalog.gen_alpha_cyclic().is_valid()
    assert catalog.gen_alpha_mixed().is_valid()


# --- ledgers ----------------------------------------------------------------------------


@pytest.mark.parametrize("ell", catalog.HELL_VALUES)
def test_Hell_ledger(ell):
    base = classes(catalog.gen_H0()) | classes(catalog.gen_H1())
    q = catalog.gen_Hell(ell)
    assert verify_qls(q).ok
    assert len(classes(q) - base) == ell
    # row 0 may be H0 or H1; the count must hold against each alone
    assert len(classes(q) - classes(catalog.gen_H0())) == ell
    assert len(classes(q) - classes(catalog.gen_H1())) == ell


@pytest.mark.parametrize("ell", catalog.HELL_PRIME_VALUES)
def test_Hell_prime_ledger(ell):
    q = catalog.gen_Hell_prime(ell)
    assert len(classes(q) - classes(catalog.gen_W0())) == ell


def test_Hell_bad_values():
    for bad in (1, 15, 17, 27, 0):
        with pytest.raises(UnsupportedParameter):
            catalog.gen_Hell(bad)
    with pytest.raises(UnsupportedParameter):
        catalog.gen_Hell_prime(24)


def test_H0_inside_H1():
    assert classes(catalog.gen_H0()) <= classes(catalog.gen_H1())


def test_wtilde_disjoint_from_companions():
    companions = {"H0": catalog.gen_H0(), "H1": catalog.gen_H1(), "W0": catalog.gen_W0()}
    companions.update({f"M{k}": catalog.gen_M(k) for k in range(1, 5)})
    companions.update({f"H{l}": catalog.gen_Hell(l) for l in catalog.HELL_VALUES if l != 36})
    for i in range(5, 12):
        wt = classes(catalog.gen_wtilde(i))
        for name, q in companions.items():
            assert not wt & classes(q), (i, name)
    # the 36-element entries are W-tilde_5 itself
    assert catalog.gen_Hell(36) is catalog.gen_wtilde(5)


@pytest.mark.parametrize("c", catalog.MENU_VALUES)
def test_menu(c):
    r = verify_qls(catalog.menu_square(c))
    assert r.ok and r.cardinality == c


def test_menu_unknown():
    with pytest.raises(UnsupportedParameter):
        catalog.menu_square(7)


def test_qls18_313():
    q = catalog.gen_QLS18_313()
    r = verify_qls(q)
    assert r.ok and r.cardinality == 313 and q.space == (3, 2, 3)


def test_generators_are_memoised():
    assert catalog.gen_W0() is catalog.gen_W0()
    assert catalog.gen_wtilde(3) is catalog.gen_wtilde(3)
