from __future__ import annotations

import math
from decimal import ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qls.errors import DivisionByZero, RadicandTooLarge, TooManyRadicals
from qls.exact import (
    I,
    OMEGA,
    OMEGA2,
    ONE,
    RADICAND_CAP,
    ZERO,
    Amplitude,
    RadReal,
    as_rational,
    coprime_basis,
    is_squarefree,
    rad_sqrt,
    squarefree_split,
)


def R(**terms) -> RadReal:
    return RadReal.from_terms({int(k[1:]): v for k, v in terms.items()})


# --- rationals -------------------------------------------------------------


def test_rational_examples():
    assert F(3, 5) + F(4, 5) == F(7, 5)
    assert F(5, 13) * F(12, 13) == F(60, 169)
    with pytest.raises(ZeroDivisionError):
        F(1, 2) / 0


def test_as_rational_rejects_floats_and_bools():
    assert as_rational("3/5") == F(3, 5)
    assert as_rational(7) == 7
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)


def test_radreal_division_by_zero_is_typed():
    with pytest.raises(DivisionByZero):
        RadReal.from_rational(F(1, 2)) / RadReal()
    with pytest.raises(ZeroDivisionError):
        RadReal().inverse()


# --- square roots ------------------------------------------------------------


@pytest.mark.parametrize(
    "q, expected",
    [
        (2, {2: 1}),
        (F(1, 5), {5: F(1, 5)}),
        (50, {2: 5}),
        (0, {}),
        (F(9, 4), {1: F(3, 2)}),
        (12, {3: 2}),
    ],
)
def test_rad_sqrt_examples(q, expected):
    assert rad_sqrt(q).as_dict() == expected


def test_rad_sqrt_rejects_negative():
    with pytest.raises(ValueError):
        rad_sqrt(-1)


def test_radicand_cap():
    with pytest.raises(RadicandTooLarge):
        squarefree_split(RADICAND_CAP + 1)
    # two primes above the trial-division bound are still decided exactly ...
    p, q, r = 1_000_003, 1_000_033, 1_000_037
    assert squarefree_split(p * q) == (1, p * q)
    assert squarefree_split(p * p) == (p, 1)
    # ... three are not
    with pytest.raises(RadicandTooLarge):
        squarefree_split(p * q * r)


def test_squarefree_split():
    assert squarefree_split(72) == (6, 2)
    assert squarefree_split(1) == (1, 1)
    assert is_squarefree(30) and not is_squarefree(18)
    s, d = squarefree_split(2 * 3 * 3 * 1_000_003)
    assert (s, d) == (3, 2 * 1_000_003)


def test_coprime_basis():
    basis = coprime_basis([6, 10, 15])
    assert sorted(basis) == [2, 3, 5]
    for a in basis:
        for b in basis:
            assert a == b or math.gcd(a, b) == 1


@given(st.integers(0, 9999), st.integers(1, 9999))
@settings(max_examples=200, deadline=None)
def test_rad_sqrt_squares_back(p, q):
    x = F(p, q)
    r = rad_sqrt(x)
    assert r * r == RadReal.from_rational(x)
    assert r.sign() >= 0
    assert all(is_squarefree(d) for d in r.radicands)


# --- radical arithmetic --------------------------------------------------------


def test_rad_ops_examples():
    assert rad_sqrt(2) * rad_sqrt(6) == R(_3=2)
    one_plus = R(_1=1, _2=1)
    assert (one_plus + R(_1=-1, _2=-1)).is_zero()
    x = rad_sqrt(5).scale(F(3, 5))
    assert x * x == F(9, 5)


def test_inverse_examples():
    assert R(_1=1, _2=1).inverse() == R(_1=-1, _2=1)
    assert RadReal.from_rational(F(3, 5)).inverse() == F(5, 3)
    assert rad_sqrt(3).scale(F(1, 2)).inverse() == rad_sqrt(3).scale(F(2, 3))


def test_inverse_many_radicals():
    primes = [2, 3, 5, 7, 11, 13, 17, 19]
    x = RadReal.from_terms({1: 1, **{p: 1 for p in primes}})
    assert (x * x.inverse()) == 1
    too_many = RadReal.from_terms({p: 1 for p in [*primes, 23, 29]})
    with pytest.raises(TooManyRadicals):
        too_many.inverse()


def test_sign_and_ordering():
    assert (rad_sqrt(2) - F(141421, 100000)).sign() == 1
    assert (rad_sqrt(2) - F(141422, 100000)).sign() == -1
    # 3.1463 against 3.1623
    assert rad_sqrt(3) + rad_sqrt(2) < rad_sqrt(10)
    # differences of 1e-20 around a 20-digit truncation are still resolved
    with localcontext() as ctx:
        ctx.prec = 40
        approx = Decimal(2).sqrt() + Decimal(3).sqrt()
    lo = F(str(approx.quantize(Decimal("1e-20"), rounding=ROUND_FLOOR)))
    x = rad_sqrt(2) + rad_sqrt(3)
    assert (x - lo).sign() == 1
    assert (x - lo - F(1, 10**20)).sign() == -1
    assert RadReal().sign() == 0


def test_json_roundtrip_and_validation():
    x = R(_1=F(-1, 2), _3=F(7, 9))
    assert RadReal.from_json(x.to_json()) == x
    assert x.to_json() == [["1", "-1", "2"], ["3", "7", "9"]]
    with pytest.raises(ValueError):
        RadReal.from_json([["4", "1", "1"]])
    with pytest.raises(ValueError):
        RadReal.from_json([["2", "1", "0"]])


small = st.fractions(min_value=-5, max_value=5, max_denominator=7)
radicands = st.sampled_from([1, 2, 3, 5, 6, 10, 15])
radreals = st.dictionaries(radicands, small, max_size=3).map(RadReal.from_terms)
amplitudes = st.builds(Amplitude, radreals, radreals)


@given(radreals, radreals, radreals)
@settings(max_examples=150, deadline=None)
def test_radreal_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == RadReal()


@given(radreals)
@settings(max_examples=150, deadline=None)
def test_radreal_inverse(x):
    if x.is_zero():
        return
    assert x * x.inverse() == 1


@given(radreals)
@settings(max_examples=100, deadline=None)
def test_radreal_canonical_form_is_idempotent(x):
    again = RadReal.from_terms(x.as_dict())
    assert again == x and again.terms == x.terms and hash(again) == hash(x)
    assert all(q != 0 for _, q in x.terms)


@given(radreals)
@settings(max_examples=100, deadline=None)
def test_sign_matches_float(x):
    f = float(x)
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)


# --- amplitudes ------------------------------------------------------------------


def test_omega_identities():
    assert OMEGA * OMEGA * OMEGA == ONE
    assert (ONE + OMEGA + OMEGA2).is_zero()
    assert OMEGA.conj() == OMEGA2
    assert OMEGA2 == Amplitude(F(-1, 2), rad_sqrt(3).scale(F(-1, 2)))


def test_mod_sq_example():
    h = rad_sqrt(F(1, 2))
    z = Amplitude(h, h)
    assert z.mod_sq() == 1
    assert (z * z.inverse()) == ONE


def test_amplitude_rejects_bad_types():
    with pytest.raises(TypeError):
        Amplitude(0.5)
    with pytest.raises(DivisionByZero):
        ONE / ZERO


def test_amplitude_json():
    assert Amplitude.from_json(OMEGA.to_json()) == OMEGA
    assert OMEGA.to_json() == {"re": [["1", "-1", "2"]], "im": [["3", "1", "2"]]}
    with pytest.raises(ValueError):
        Amplitude.from_json({"re": []})


@given(amplitudes, amplitudes, amplitudes)
@settings(max_examples=100, deadline=None)
def test_amplitude_field_axioms(z, w, u):
    assert (z * w) * u == z * (w * u)
    assert z * (w + u) == z * w + z * u
    assert z.conj().conj() == z
    assert (z * w).conj() == z.conj() * w.conj()
    m = z.mod_sq()
    assert m == (z.conj() * z).re and (z.conj() * z).im.is_zero()
    assert m.sign() >= 0
    if not z.is_zero():
        assert z * z.inverse() == ONE


@given(amplitudes)
@settings(max_examples=50, deadline=None)
def test_complex_evaluation(z):
    c = complex(z)
    assert abs(c * c.conjugate() - float(z.mod_sq())) < 1e-6 * (1 + abs(c) ** 2)


def test_i_squared():
    assert I * I == Amplitude(-1)
