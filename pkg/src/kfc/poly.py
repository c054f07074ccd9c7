"""Monomials and polynomials in U, V over F2, plus formal chains of generators."""
from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

EXPONENT_CAP = 1 << 16


class ExponentError(ValueError):
    """An exponent left the supported range [0, EXPONENT_CAP]."""


@dataclass(frozen=True, order=True)
class Monomial:
    u_exp: int = 0
    v_exp: int = 0

    def __post_init__(self):
        for e in (self.u_exp, self.v_exp):
            if not isinstance(e, int) or e < 0 or e > EXPONENT_CAP:
                raise ExponentError(f"exponent {e!r} outside [0, {EXPONENT_CAP}]")

    def __mul__(self, other: Monomial) -> Monomial:
        return mono_mul(self, other)

    @property
    def degree(self) -> int:
        return self.u_exp + self.v_exp

    def divides(self, other: Monomial) -> bool:
        return self.u_exp <= other.u_exp and self.v_exp <= other.v_exp

    def __str__(self):
        return format_monomial(self)


ONE = Monomial(0, 0)
U = Monomial(1, 0)
V = Monomial(0, 1)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return Monomial(a.u_exp + b.u_exp, a.v_exp + b.v_exp)


class BivariatePoly:
    """Element of F2[U,V], stored as a sorted tuple of distinct monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Monomial] = ()):
        # duplicates cancel in characteristic 2
        acc: set[Monomial] = set()
        for m in terms:
            acc ^= {m}
        self.terms: tuple[Monomial, ...] = tuple(sorted(acc))

    @classmethod
    def _canonical(cls, terms: tuple[Monomial, ...]) -> BivariatePoly:
        p = cls.__new__(cls)
        p.terms = terms
        return p

    def __add__(self, other: BivariatePoly) -> BivariatePoly:
        return poly_add(self, other)

    def __mul__(self, m: Monomial) -> BivariatePoly:
        return BivariatePoly._canonical(tuple(sorted(mono_mul(t, m) for t in self.terms)))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, BivariatePoly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __repr__(self):
        return f"BivariatePoly({{{', '.join(map(format_monomial, self.terms))}}})"


ZERO = BivariatePoly()


def poly(*terms: Monomial) -> BivariatePoly:
    return BivariatePoly(terms)


def poly_add(p: BivariatePoly, q: BivariatePoly) -> BivariatePoly:
    return BivariatePoly._canonical(tuple(sorted(set(p.terms) ^ set(q.terms))))


def specialize(p: BivariatePoly, which: str) -> BivariatePoly:
    """Kill a variable: ``which`` is one of ``"V"``, ``"U"`` or ``"UV"``."""
    if which == "V":
        keep = [m for m in p.terms if m.v_exp == 0]
    elif which == "U":
        keep = [m for m in p.terms if m.u_exp == 0]
    elif which == "UV":
        keep = [m for m in p.terms if m.u_exp == 0 and m.v_exp == 0]
    else:
        raise ValueError(f"unknown variable selector {which!r}")
    return BivariatePoly._canonical(tuple(keep))


class Chain(Mapping):
    """Finite F2[U,V]-combination of generator ids; zero coefficients are dropped."""

    __slots__ = ("_d",)

    def __init__(self, entries: Mapping[str, BivariatePoly] | Iterable[tuple[str, BivariatePoly]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        self._d = {k: p for k, p in items if p}

    def __getitem__(self, key):
        return self._d[key]

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __eq__(self, other):
        if isinstance(other, Chain):
            return self._d == other._d
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __repr__(self):
        return "Chain({" + ", ".join(f"{k}: {p!r}" for k, p in self._d.items()) + "})"

    def coefficient(self, gen: str) -> BivariatePoly:
        return self._d.get(gen, ZERO)

    def terms(self):
        """Yield (monomial, generator id) pairs."""
        for g, p in self._d.items():
            for m in p.terms:
                yield m, g


EMPTY_CHAIN = Chain()


def chain(**kw: BivariatePoly | Monomial) -> Chain:
    return Chain({k: (poly(v) if isinstance(v, Monomial) else v) for k, v in kw.items()})


def chain_scale_add(target: Chain, coeff: Monomial, source: Chain) -> Chain:
    """Return ``target + coeff * source``."""
    out = dict(target.items())
    for g, p in source.items():
        out[g] = poly_add(out.get(g, ZERO), p * coeff)
    return Chain(out)


# --- term syntax: U2V1.b, U.b, V3, b --------------------------------------

_MONO_RE = re.compile(r"^(?:U(\d*))?(?:V(\d*))?$")


def parse_monomial(text: str) -> Monomial:
    m = _MONO_RE.match(text)
    if not m or text == "":
        raise ValueError(f"bad monomial {text!r}")
    u, v = m.group(1), m.group(2)
    u_exp = 0 if u is None else (int(u) if u else 1)
    v_exp = 0 if v is None else (int(v) if v else 1)
    return Monomial(u_exp, v_exp)


def format_monomial(m: Monomial) -> str:
    out = ""
    if m.u_exp:
        out += "U" if m.u_exp == 1 else f"U{m.u_exp}"
    if m.v_exp:
        out += "V" if m.v_exp == 1 else f"V{m.v_exp}"
    return out or "1"


def format_term(m: Monomial, gen: str) -> str:
    if m == ONE:
        return gen
    return f"{format_monomial(m)}.{gen}"
