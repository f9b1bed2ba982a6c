"""Exact arithmetic over rationals extended by square roots of integers.

Every number that appears in the order-6 building blocks is of the form
``sum_d q_d * sqrt(d)`` with rational ``q_d`` and squarefree ``d``, possibly
paired with an imaginary part of the same shape (this houses the cube root
of unity ``omega = -1/2 + (sqrt 3 / 2) i``).  Such a representation is unique,
so value equality is structural equality and hashing is exact.

Rationals are plain :class:`fractions.Fraction` objects.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .errors import DivisionByZero, RadicandTooLarge, TooManyRadicals

Rational = Fraction

TRIAL_DIVISION_BOUND = 10**6
RADICAND_CAP = 2**62
MAX_INV_RADICALS = 8
SIGN_PRECISION_BITS = 64

Number = Union[int, Fraction, "RadReal"]


def as_rational(value: int | str | Fraction) -> Fraction:
    """Parse ``value`` (``int``, ``Fraction`` or a string such as ``"3/5"``)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact rational input {value!r}")
    return Fraction(value)


@lru_cache(maxsize=65536)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` squarefree.

    Trial division runs up to ``TRIAL_DIVISION_BOUND``; the cofactor left
    over is decided exactly whenever it has at most two prime factors.
    """
    if n <= 0:
        raise ValueError("squarefree_split expects a positive integer")
    if n > RADICAND_CAP:
        raise RadicandTooLarge(f"radicand {n} exceeds cap 2**62")
    s, d = 1, 1
    rest = n
    p = 2
    while p * p <= rest and p <= TRIAL_DIVISION_BOUND:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p = 3 if p == 2 else p + 2
    if rest > 1:
        bound = TRIAL_DIVISION_BOUND
        if rest < bound * bound or p * p > rest:
            d *= rest  # prime
        else:
            r = math.isqrt(rest)
            if r * r == rest:
                s *= r
            elif rest < bound**3:
                d *= rest  # p or p*q with p != q, squarefree either way
            else:
                raise RadicandTooLarge(f"cannot certify squarefree part of {n}")
    return s, d


def is_squarefree(n: int) -> bool:
    return n > 0 and squarefree_split(n)[0] == 1


def coprime_basis(values: Iterable[int]) -> list[int]:
    """Refine ``values`` into pairwise coprime factors (all > 1).

    Each input divides a product of the returned atoms; for squarefree
    inputs every input is a product of distinct atoms.
    """
    atoms: list[int] = []
    for v in values:
        pending = [v]
        while pending:
            x = pending.pop()
            if x == 1:
                continue
            for k, a in enumerate(atoms):
                g = math.gcd(a, x)
                if g == 1:
                    continue
                if g == a == x:
                    x = 1
                    break
                del atoms[k]
                pending.extend(y for y in (g, a // g, x // g) if y != 1)
                x = 1
                break
            if x != 1:
                atoms.append(x)
    return sorted(set(atoms))


def _radical_product(d1: int, d2: int) -> tuple[int, int]:
    """``sqrt(d1)*sqrt(d2) == g*sqrt(d)`` for squarefree inputs."""
    if d1 == 1:
        return 1, d2
    if d2 == 1:
        return 1, d1
    g = math.gcd(d1, d2)
    d = (d1 // g) * (d2 // g)
    if d > RADICAND_CAP:
        raise RadicandTooLarge(f"radicand {d} exceeds cap 2**62")
    return g, d


class RadReal:
    """Exact real number ``sum_d q_d * sqrt(d)`` over squarefree radicands."""

    __slots__ = ("terms", "_hash")

    terms: tuple[tuple[int, Fraction], ...]

    def __init__(self, terms: tuple[tuple[int, Fraction], ...] = ()) -> None:
        # trusted constructor: sorted, squarefree, no zero coefficients
        self.terms = terms
        self._hash: int | None = None

    # -- construction -------------------------------------------------
    @classmethod
    def from_rational(cls, q: int | str | Fraction) -> RadReal:
        q = as_rational(q)
        return cls(((1, q),)) if q else ZERO_R

    @classmethod
    def from_terms(cls, terms: Mapping[int, int | str | Fraction] | Iterable[tuple[int, int | str | Fraction]]) -> RadReal:
        """Build from radicand/coefficient pairs, reducing any non-squarefree radicand."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for d, q in items:
            d = int(d)
            if d <= 0:
                raise ValueError(f"radicand must be positive, got {d}")
            s, core = squarefree_split(d)
            acc[core] = acc.get(core, Fraction(0)) + s * as_rational(q)
        return cls._from_dict(acc)

    @classmethod
    def _from_dict(cls, acc: dict[int, Fraction]) -> RadReal:
        return cls(tuple(sorted((d, q) for d, q in acc.items() if q)))

    # -- predicates and views ----------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 1)

    def rational_part(self) -> Fraction:
        if self.terms and self.terms[0][0] == 1:
            return self.terms[0][1]
        return Fraction(0)

    @property
    def radicands(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.terms)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: Number) -> RadReal:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for d, q in other.terms:
            acc[d] = acc.get(d, 0) + q
        return RadReal._from_dict(acc)

    __radd__ = __add__

    def __neg__(self) -> RadReal:
        return RadReal(tuple((d, -q) for d, q in self.terms))

    def __sub__(self, other: Number) -> RadReal:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> RadReal:
        return (-self) + other

    def __mul__(self, other: Number) -> RadReal:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, RadReal):
            return NotImplemented
        if not self.terms or not other.terms:
            return ZERO_R
        if len(other.terms) == 1 and other.terms[0][0] == 1:
            return self.scale(other.terms[0][1])
        if len(self.terms) == 1 and self.terms[0][0] == 1:
            return other.scale(self.terms[0][1])
        acc: dict[int, Fraction] = {}
        for d1, q1 in self.terms:
            for d2, q2 in other.terms:
                g, d = _radical_product(d1, d2)
                acc[d] = acc.get(d, 0) + g * q1 * q2
        return RadReal._from_dict(acc)

    __rmul__ = __mul__

    def scale(self, q: int | Fraction) -> RadReal:
        if not q:
            return ZERO_R
        if q == 1:
            return self
        return RadReal(tuple((d, c * q) for d, c in self.terms))

    def split(self, atom: int) -> tuple[RadReal, RadReal]:
        """Write ``self = a + b*sqrt(atom)`` with ``a``, ``b`` free of ``sqrt(atom)``.

        ``atom`` must divide either all or none of the primes of each radicand
        (true for an atom of :func:`coprime_basis` over the radicands).
        """
        a: list[tuple[int, Fraction]] = []
        b: dict[int, Fraction] = {}
        for d, q in self.terms:
            if d % atom == 0:
                b[d // atom] = q
            else:
                a.append((d, q))
        return RadReal(tuple(a)), RadReal._from_dict(b)

    def inverse(self) -> RadReal:
        """Exact reciprocal by successive rationalisation of each radical."""
        if not self.terms:
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return RadReal(((1, 1 / self.terms[0][1]),))
        radicals = [d for d, _ in self.terms if d != 1]
        if len(radicals) > MAX_INV_RADICALS:
            raise TooManyRadicals(f"{len(radicals)} radicals exceed limit {MAX_INV_RADICALS}")
        x: RadReal = self
        acc = ONE_R
        for atom in coprime_basis(radicals):
            a, b = x.split(atom)
            if b.is_zero():
                continue
            conj = a - b * RadReal(((atom, Fraction(1)),))
            x = a * a - (b * b).scale(atom)
            acc = acc * conj
        if not x.is_rational():  # pragma: no cover - guarded by the coprime basis
            raise ArithmeticError("rationalisation did not terminate in a rational")
        return acc.scale(1 / x.rational_part())

    def __truediv__(self, other: Number) -> RadReal:
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero")
            return self.scale(1 / Fraction(other))
        if not isinstance(other, RadReal):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> RadReal:
        return _coerce(other) * self.inverse()

    # -- ordering -------------------------------------------------------
    def bounds(self, bits: int = SIGN_PRECISION_BITS) -> tuple[Fraction, Fraction]:
        """Rational enclosure ``lo <= self <= hi`` with roughly ``bits`` bits per radical."""
        scale = 1 << bits
        lo = hi = Fraction(0)
        for d, q in self.terms:
            if d == 1:
                lo += q
                hi += q
                continue
            r = math.isqrt(d * scale * scale)
            lo_root = Fraction(r, scale)
            hi_root = Fraction(r if r * r == d * scale * scale else r + 1, scale)
            if q > 0:
                lo += q * lo_root
                hi += q * hi_root
            else:
                lo += q * hi_root
                hi += q * lo_root
        return lo, hi

    def sign(self) -> int:
        """Exact sign; refines the enclosure until it excludes zero."""
        if not self.terms:
            return 0
        if self.is_rational():
            return 1 if self.terms[0][1] > 0 else -1
        bits = SIGN_PRECISION_BITS
        while True:
            lo, hi = self.bounds(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def __lt__(self, other: Number) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Number) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Number) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Number) -> bool:
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        return float(sum(float(q) * math.sqrt(d) for d, q in self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- identity -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, RadReal):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == RadReal.from_rational(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash(self.terms)
        return h

    def __repr__(self) -> str:
        return f"RadReal({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for d, q in self.terms:
            parts.append(str(q) if d == 1 else f"{q}*sqrt({d})")
        return " + ".join(parts).replace("+ -", "- ")

    # -- serialisation --------------------------------------------------
    def to_json(self) -> list[list[str]]:
        """``[[d, p, q], ...]`` meaning ``sum (p/q)*sqrt(d)``; integers as decimal strings."""
        return [[str(d), str(q.numerator), str(q.denominator)] for d, q in self.terms]

    @classmethod
    def from_json(cls, data: list) -> RadReal:
        acc: dict[int, Fraction] = {}
        for item in data:
            d, p, q = (int(x) for x in item)
            if d <= 0 or q <= 0:
                raise ValueError(f"malformed radical term {item!r}")
            if not is_squarefree(d):
                raise ValueError(f"radicand {d} is not squarefree")
            if d in acc:
                raise ValueError(f"duplicate radicand {d}")
            acc[d] = Fraction(p, q)
        return cls._from_dict(acc)


def _coerce(x: object) -> RadReal:
    if isinstance(x, RadReal):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return RadReal.from_rational(x)
    return NotImplemented  # type: ignore[return-value]


def _coerce_strict(x: object) -> RadReal:
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"cannot use {x!r} as an exact real")
    return r


def rad_sqrt(q: int | str | Fraction) -> RadReal:
    """Exact nonnegative square root of a nonnegative rational.

    >>> rad_sqrt(Fraction(1, 5))
    RadReal(1/5*sqrt(5))
    """
    q = as_rational(q)
    if q < 0:
        raise ValueError(f"square root of negative rational {q}")
    if not q:
        return ZERO_R
    # sqrt(p/r) = sqrt(p*r)/r
    s, d = squarefree_split(q.numerator * q.denominator)
    return RadReal(((d, Fraction(s, q.denominator)),))


ZERO_R = RadReal()
ONE_R = RadReal(((1, Fraction(1)),))


class Amplitude:
    """Exact complex number with :class:`RadReal` real and imaginary parts."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: Number = ZERO_R, im: Number = ZERO_R) -> None:
        self.re: RadReal = re if isinstance(re, RadReal) else _coerce_strict(re)
        self.im: RadReal = im if isinstance(im, RadReal) else _coerce_strict(im)
        self._hash: int | None = None

    @classmethod
    def of(cls, x: Number | Amplitude) -> Amplitude:
        return x if isinstance(x, Amplitude) else cls(x)

    def is_zero(self) -> bool:
        return not self.re.terms and not self.im.terms

    def is_real(self) -> bool:
        return not self.im.terms

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: Number | Amplitude) -> Amplitude:
        if not isinstance(other, Amplitude):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
            return Amplitude(self.re + other, self.im)
        return Amplitude(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> Amplitude:
        return Amplitude(-self.re, -self.im)

    def __sub__(self, other: Number | Amplitude) -> Amplitude:
        return self + (-Amplitude.of(other))

    def __rsub__(self, other: Number | Amplitude) -> Amplitude:
        return Amplitude.of(other) - self

    def __mul__(self, other: Number | Amplitude) -> Amplitude:
        if not isinstance(other, Amplitude):
            if isinstance(other, (int, Fraction, RadReal)) and not isinstance(other, bool):
                return Amplitude(self.re * other, self.im * other)
            return NotImplemented
        if other.is_real():
            return Amplitude(self.re * other.re, self.im * other.re)
        if self.is_real():
            return Amplitude(self.re * other.re, self.re * other.im)
        return _amp_mul(self, other)

    __rmul__ = __mul__

    def conj(self) -> Amplitude:
        return Amplitude(self.re, -self.im) if self.im.terms else self

    def mod_sq(self) -> RadReal:
        """``|z|**2`` as an exact real."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> Amplitude:
        if self.is_zero():
            raise DivisionByZero("inverse of zero amplitude")
        return self.conj() * self.mod_sq().inverse()

    def __truediv__(self, other: Number | Amplitude) -> Amplitude:
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero")
            return Amplitude(self.re.scale(1 / Fraction(other)), self.im.scale(1 / Fraction(other)))
        return self * Amplitude.of(other).inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Amplitude):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction, RadReal)):
            return not self.im.terms and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash((self.re.terms, self.im.terms))
        return h

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"Amplitude({self})"

    def __str__(self) -> str:
        if not self.im.terms:
            return str(self.re)
        if not self.re.terms:
            return f"({self.im})i"
        return f"({self.re}) + ({self.im})i"

    def to_json(self) -> dict[str, list[list[str]]]:
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> Amplitude:
        if set(data) != {"re", "im"}:
            raise ValueError(f"amplitude must have exactly 're' and 'im': {data!r}")
        return cls(RadReal.from_json(data["re"]), RadReal.from_json(data["im"]))


@lru_cache(maxsize=1 << 16)
def _amp_mul(a: Amplitude, b: Amplitude) -> Amplitude:
    return Amplitude(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)


ZERO = Amplitude()
ONE = Amplitude(ONE_R)
I = Amplitude(ZERO_R, ONE_R)
SQRT3 = rad_sqrt(3)
OMEGA = Amplitude(Fraction(-1, 2), SQRT3.scale(Fraction(1, 2)))
OMEGA2 = OMEGA.conj()


def amp(x: Number | Amplitude) -> Amplitude:
    return Amplitude.of(x)
