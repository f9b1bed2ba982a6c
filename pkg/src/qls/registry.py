"""Name-and-parameter access to every catalog generator."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Mapping

from . import catalog
from .errors import UnknownGenerator, UnsupportedParameter
from .exact import as_rational


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _int(text: str) -> int:
    return int(text.strip())


def _rational(text: str) -> Fraction:
    return as_rational(text.strip())


def _str(text: str) -> str:
    return text.strip()


@dataclass(frozen=True)
class Generator:
    name: str
    func: Callable[..., Any]
    params: Mapping[str, tuple[Callable[[str], Any], Any]]
    doc: str = ""

    def __call__(self, raw: Mapping[str, str]) -> Any:
        unknown = set(raw) - set(self.params)
        if unknown:
            raise UnsupportedParameter(f"{self.name} takes {sorted(self.params) or 'no parameters'}, got {sorted(unknown)}")
        kwargs = {}
        for key, (parse, default) in self.params.items():
            if key in raw:
                try:
                    kwargs[key] = parse(raw[key])
                except (ValueError, TypeError) as exc:
                    raise UnsupportedParameter(f"{self.name}: bad value for {key}: {exc}") from exc
            elif default is _REQUIRED:
                raise UnsupportedParameter(f"{self.name} needs parameter {key}")
            else:
                kwargs[key] = default
        return self.func(**kwargs)


_REQUIRED = object()
_PRINTED = {"printed": (_bool, False)}
_ABD = {"a": (_rational, Fraction(0)), "b": (_rational, Fraction(0)), "d": (_rational, Fraction(0))}


def _family(letter: str) -> Generator:
    return Generator(letter, lambda a: catalog.gen_block_family(letter, a), {"a": (_rational, Fraction(0))},
                     f"rotation block {letter}_a")


def _gen_L(a, b, d, x, variant):
    return catalog.gen_L(a, b, d, catalog.gen_qls4(x, variant))


def _gen_alpha(variant):
    if variant == "cyclic":
        return catalog.gen_alpha_cyclic()
    if variant == "mixed":
        return catalog.gen_alpha_mixed()
    raise ValueError(f"variant must be cyclic or mixed, got {variant!r}")


_LIST = [
    *(_family(c) for c in "ABCDE"),
    Generator("F1", catalog.gen_F1, {}, "Fourier block on L(|00>,|01>,|02>)"),
    Generator("F2", catalog.gen_F2, _PRINTED, "real QLS(3) block"),
    Generator("G1", catalog.gen_G1, _PRINTED, "Fourier block on L(|10>,|11>,|12>)"),
    Generator("U", catalog.gen_U, {}, "2x2 rectangle"),
    Generator("V1", catalog.gen_V1, {}, "2x2 rectangle"),
    Generator("V2", catalog.gen_V2, {}, "2x2 rectangle"),
    Generator("U0", catalog.gen_U0, {}, "3x2 rectangle"),
    Generator("V0", catalog.gen_V0, {}, "2x3 rectangle"),
    Generator("Ui", catalog.gen_Ui, {"i": (_int, _REQUIRED)}, "3x2 rectangle with slopes 3i+2..3i+4"),
    Generator("Xp", catalog.gen_Xp, {}, "16-element QLS(4)"),
    Generator("Xpp", catalog.gen_Xpp, {}, "second 16-element QLS(4)"),
    Generator("QLS4", catalog.gen_qls4, {"c": (_int, _REQUIRED), "variant": (_str, "Xp")}, "QLS(4) of cardinality c"),
    Generator("L", _gen_L, {**_ABD, "x": (_int, 4), "variant": (_str, "Xp")}, "L layout over QLS4(x)"),
    Generator("Wabd", catalog.gen_W_abd, _ABD, "W layout, 24 + 2|{a,b,d}| classes"),
    Generator("W3", catalog.gen_W3, {}, "9 classes"),
    Generator("W4", catalog.gen_W4, _PRINTED, "11 classes"),
    Generator("W5", catalog.gen_W5, {}, "16 classes"),
    Generator("W0", catalog.gen_W0, {}, "36 classes"),
    Generator("Wtilde", catalog.gen_wtilde, {"i": (_int, _REQUIRED)}, "36 classes, disjoint across i"),
    Generator("Xk", catalog.gen_X, {"k": (_int, _REQUIRED)}, "rational orthogonal matrix X_k"),
    Generator("Jk", catalog.gen_J, {"k": (_int, _REQUIRED), **_PRINTED}, "orthogonal matrix J_k"),
    Generator("Mk", catalog.gen_M, {"k": (_int, _REQUIRED)}, "W0 moved by X1 J_k X1^T"),
    Generator("S", catalog.gen_S, _PRINTED, "unitary defining the alpha basis"),
    Generator("AlphaQLS4", _gen_alpha, {"variant": (_str, "cyclic")}, "QLS(4) on the alpha basis"),
    Generator("H0", catalog.gen_H0, {}, "6 classes"),
    Generator("H1", catalog.gen_H1, {}, "14 classes"),
    Generator("Hell", lambda l: catalog.gen_Hell(l), {"l": (_int, _REQUIRED)}, "l classes outside H0 and H1"),
    Generator("HellPrime", lambda l: catalog.gen_Hell_prime(l), {"l": (_int, _REQUIRED)}, "l classes outside W0"),
    Generator("QLS18_313", catalog.gen_QLS18_313, {}, "order 18, 313 classes"),
    Generator("Menu", catalog.menu_square, {"c": (_int, _REQUIRED)}, "order 6 with c classes"),
]

GENERATORS: dict[str, Generator] = {g.name: g for g in _LIST}
ALIASES = {"X": "Xk", "J": "Jk", "M": "Mk", "Alpha": "AlphaQLS4", "HPrime": "HellPrime"}
PARAM_ALIASES = {"ell": "l"}


def lookup(name: str) -> Generator:
    key = ALIASES.get(name, name)
    if key not in GENERATORS:
        raise UnknownGenerator(f"unknown generator {name!r}; known: {', '.join(sorted(GENERATORS))}")
    return GENERATORS[key]


def generate(name: str, params: Mapping[str, str] | None = None) -> Any:
    params = {PARAM_ALIASES.get(k, k): v for k, v in (params or {}).items()}
    return lookup(name)(params)
