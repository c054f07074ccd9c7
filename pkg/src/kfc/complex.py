"""Free bigraded chain complexes over F2[U,V].

Gradings are stored as ``(gr_u, gr_v)``: U shifts by (-2, 0), V by (0, -2), and
the differential by (-1, -1).  Alexander grading is ``(gr_u - gr_v) / 2`` and
Maslov grading is ``gr_u``.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .poly import (
    ONE,
    ZERO,
    BivariatePoly,
    Chain,
    EMPTY_CHAIN,
    Monomial,
    chain_scale_add,
    format_term,
    poly,
    poly_add,
)


@dataclass(frozen=True)
class Generator:
    id: str
    gr_u: int
    gr_v: int

    @property
    def alexander(self) -> int:
        return (self.gr_u - self.gr_v) // 2

    @property
    def maslov(self) -> int:
        return self.gr_u

    @property
    def bigrading(self) -> tuple[int, int]:
        return (self.gr_u, self.gr_v)

    @classmethod
    def at(cls, id: str, alexander: int, maslov: int) -> Generator:
        return cls(id, maslov, maslov - 2 * alexander)


@dataclass(frozen=True, eq=True)
class CfkComplex:
    name: str
    generators: tuple[Generator, ...]
    differential: Mapping[str, Chain] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        diff = {g: Chain(c) if not isinstance(c, Chain) else c for g, c in dict(self.differential).items()}
        object.__setattr__(self, "differential", {g: c for g, c in diff.items() if c})

    def __hash__(self):
        return hash((self.name, self.generators, frozenset(self.differential.items())))

    @cached_property
    def index(self) -> dict[str, int]:
        return {g.id: i for i, g in enumerate(self.generators)}

    @cached_property
    def by_id(self) -> dict[str, Generator]:
        return {g.id: g for g in self.generators}

    def d(self, gen: str) -> Chain:
        return self.differential.get(gen, EMPTY_CHAIN)

    def __len__(self):
        return len(self.generators)

    def renamed(self, name: str) -> CfkComplex:
        return CfkComplex(name, self.generators, self.differential)


# --- errors -----------------------------------------------------------------


class BasisChangeError(ValueError):
    pass


class NotHomogeneous(ValueError):
    pass


# --- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # "grading-parity" | "unknown-generator" | "homogeneity" | "reduced" | "d-squared" | "duplicate-generator"
    generator: str
    term: str = ""
    detail: str = ""

    def __str__(self):
        s = f"{self.kind} at {self.generator}"
        if self.term:
            s += f": {self.term}"
        if self.detail:
            s += f" ({self.detail})"
        return s


def _d_of_chain(c: CfkComplex, ch: Chain) -> Chain:
    out: dict[str, BivariatePoly] = {}
    for m, g in ch.terms():
        for g2, p in c.d(g).items():
            out[g2] = poly_add(out.get(g2, ZERO), p * m)
    return Chain(out)


def validate(c: CfkComplex) -> list[Violation]:
    """Every violated invariant, empty iff the complex is valid."""
    out: list[Violation] = []
    seen = set()
    for g in c.generators:
        if g.id in seen:
            out.append(Violation("duplicate-generator", g.id))
        seen.add(g.id)
        if (g.gr_u - g.gr_v) % 2:
            out.append(Violation("grading-parity", g.id, detail=f"gr_u={g.gr_u}, gr_v={g.gr_v}"))
    for src, ch in c.differential.items():
        if src not in c.by_id:
            out.append(Violation("unknown-generator", src, detail="differential of unknown generator"))
            continue
        x = c.by_id[src]
        for m, tgt in ch.terms():
            term = format_term(m, tgt)
            if tgt not in c.by_id:
                out.append(Violation("unknown-generator", src, term))
                continue
            y = c.by_id[tgt]
            if y.gr_u - 2 * m.u_exp != x.gr_u - 1 or y.gr_v - 2 * m.v_exp != x.gr_v - 1:
                out.append(Violation("homogeneity", src, term, "term does not lie in grading (gr_u-1, gr_v-1)"))
            if m == ONE:
                out.append(Violation("reduced", src, term, "coefficient not in (U, V)"))
    if not any(v.kind == "unknown-generator" for v in out):
        for g in c.generators:
            dd = _d_of_chain(c, c.d(g.id))
            if dd:
                m, tgt = next(dd.terms())
                out.append(Violation("d-squared", g.id, format_term(m, tgt), "d(d x) != 0"))
    return out


def is_valid(c: CfkComplex) -> bool:
    return not validate(c)


# --- matrix view --------------------------------------------------------------


def gradings(c: CfkComplex) -> np.ndarray:
    return np.array([[g.gr_u, g.gr_v] for g in c.generators], dtype=np.int64).reshape(len(c), 2)


def coefficient_monomial(src: Generator, tgt: Generator) -> Monomial | None:
    """The unique monomial m with m*tgt in the grading of d(src), if any."""
    du = tgt.gr_u - src.gr_u + 1
    dv = tgt.gr_v - src.gr_v + 1
    if du < 0 or dv < 0 or du % 2 or dv % 2:
        return None
    return Monomial(du // 2, dv // 2)


def to_matrix(c: CfkComplex) -> np.ndarray:
    """F2 matrix ``D[target, source]``; the monomial of each entry is implied by gradings."""
    n = len(c)
    D = np.zeros((n, n), np.uint8)
    idx = c.index
    for src, ch in c.differential.items():
        j = idx[src]
        x = c.generators[j]
        for tgt, p in ch.items():
            i = idx[tgt]
            m = coefficient_monomial(x, c.generators[i])
            if len(p) != 1 or p.terms[0] != m:
                raise NotHomogeneous(f"d{src} has coefficient {p!r} on {tgt}")
            D[i, j] = 1
    return D


def from_matrix(name: str, generators: Iterable[Generator], D: np.ndarray) -> CfkComplex:
    gens = tuple(generators)
    diff = {}
    for j, x in enumerate(gens):
        rows = np.flatnonzero(D[:, j])
        if rows.size:
            entries = {}
            for i in rows:
                m = coefficient_monomial(x, gens[i])
                if m is None:
                    raise NotHomogeneous(f"matrix entry {gens[i].id} <- {x.id} has no homogeneous monomial")
                entries[gens[i].id] = poly(m)
            diff[x.id] = Chain(entries)
    return CfkComplex(name, gens, diff)


# --- basis changes ----------------------------------------------------------


@dataclass(frozen=True)
class BasisChange:
    """Replace generator ``target`` by ``target + addend``."""

    target: str
    addend: Chain

    def __str__(self):
        terms = " + ".join(format_term(m, g) for m, g in self.addend.terms())
        return f"{self.target} -> {self.target} + {terms or '0'}"


def check_basis_change(c: CfkComplex, sigma: BasisChange) -> None:
    if sigma.target not in c.by_id:
        raise BasisChangeError(f"unknown generator {sigma.target!r}")
    x = c.by_id[sigma.target]
    for m, g in sigma.addend.terms():
        if g not in c.by_id:
            raise BasisChangeError(f"unknown generator {g!r} in addend")
        if g == sigma.target:
            raise BasisChangeError(f"target {g!r} appears in its own addend")
        y = c.by_id[g]
        if (y.gr_u - 2 * m.u_exp, y.gr_v - 2 * m.v_exp) != (x.gr_u, x.gr_v):
            raise BasisChangeError(f"grading mismatch: {format_term(m, g)} is not in the grading of {x.id}")


def apply_basis_change(c: CfkComplex, sigma: BasisChange) -> CfkComplex:
    """Rewrite the differential in the basis where ``target`` becomes ``target + addend``."""
    check_basis_change(c, sigma)
    x = sigma.target
    if not sigma.addend:
        return c
    diff = {g.id: c.d(g.id) for g in c.generators}
    # source side, still in old coordinates
    new_dx = c.d(x)
    for m, y in sigma.addend.terms():
        new_dx = chain_scale_add(new_dx, m, c.d(y))
    diff[x] = new_dx
    # target side: old x = new x + addend
    for g, ch in diff.items():
        coeff = ch.coefficient(x)
        if coeff:
            for cm in coeff.terms:
                ch = chain_scale_add(ch, cm, sigma.addend)
            diff[g] = ch
    return CfkComplex(c.name, c.generators, diff)


def apply_basis_changes(c: CfkComplex, changes: Iterable[BasisChange]) -> CfkComplex:
    for s in changes:
        c = apply_basis_change(c, s)
    return c


def basis_change_vector(c: CfkComplex, sigma: BasisChange) -> np.ndarray:
    h = np.zeros(len(c), np.uint8)
    for _, g in sigma.addend.terms():
        h[c.index[g]] ^= 1
    return h


def change_from_vector(c: CfkComplex, target: int, h: np.ndarray) -> BasisChange:
    """Build the BasisChange for ``target -> target + sum h[y] y`` with implied monomials."""
    x = c.generators[target]
    entries = {}
    for i in np.flatnonzero(h):
        y = c.generators[i]
        du, dv = y.gr_u - x.gr_u, y.gr_v - x.gr_v
        if du < 0 or dv < 0 or du % 2 or dv % 2 or i == target:
            raise BasisChangeError(f"{y.id} cannot be added to {x.id}")
        entries[y.id] = poly(Monomial(du // 2, dv // 2))
    return BasisChange(x.id, Chain(entries))


def admissible_addends(gr: np.ndarray, target: int) -> np.ndarray:
    """Indices y != target that may be added (times a monomial) to ``target``."""
    diff = gr - gr[target]
    ok = (diff[:, 0] >= 0) & (diff[:, 1] >= 0) & (diff[:, 0] % 2 == 0) & (diff[:, 1] % 2 == 0)
    ok[target] = False
    return np.flatnonzero(ok)


# --- direct sums and simple builders ----------------------------------------


def _fresh_id(base: str, taken: set[str]) -> str:
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def direct_sum(c1: CfkComplex, c2: CfkComplex, name: str | None = None) -> CfkComplex:
    """Block-diagonal sum; ids of ``c2`` colliding with ``c1`` get a numeric suffix."""
    taken = {g.id for g in c1.generators}
    rename = {}
    for g in c2.generators:
        new = g.id if g.id not in taken else _fresh_id(g.id, taken | {h.id for h in c2.generators})
        rename[g.id] = new
        taken.add(new)
    gens = c1.generators + tuple(Generator(rename[g.id], g.gr_u, g.gr_v) for g in c2.generators)
    diff = dict(c1.differential)
    for src, ch in c2.differential.items():
        diff[rename[src]] = Chain({rename[t]: p for t, p in ch.items()})
    if name is None:
        name = c1.name if not c2.generators else (c2.name if not c1.generators else f"{c1.name}+{c2.name}")
    return CfkComplex(name, gens, diff)


EMPTY = CfkComplex("empty", ())


def single_generator(name: str = "unknot", id: str = "x", alexander: int = 0, maslov: int = 0) -> CfkComplex:
    return CfkComplex(name, (Generator.at(id, alexander, maslov),))


def box_complex(
    alexander: int = 0,
    maslov: int = 0,
    u_exp: int = 1,
    names: tuple[str, str, str, str] = ("a", "b", "c", "d"),
    name: str = "box",
) -> CfkComplex:
    """da = U^k b + V c, db = V d, dc = U^k d, with a at (A, M).  k = 1 is a unit box."""
    a, b, cc, d = names
    ga = (maslov, maslov - 2 * alexander)
    k = u_exp
    gens = (
        Generator(a, *ga),
        Generator(b, ga[0] + 2 * k - 1, ga[1] - 1),
        Generator(cc, ga[0] - 1, ga[1] + 1),
        Generator(d, ga[0] + 2 * k - 2, ga[1]),
    )
    Uk = Monomial(k, 0)
    V1 = Monomial(0, 1)
    diff = {
        a: Chain({b: poly(Uk), cc: poly(V1)}),
        b: Chain({d: poly(V1)}),
        cc: Chain({d: poly(Uk)}),
    }
    return CfkComplex(name, gens, diff)


def box_sum(
    centers: Iterable[tuple[int, int] | tuple[int, int, int]],
    name: str = "box-sum",
    free: tuple[int, int] | None = (0, 0),
) -> CfkComplex:
    """One free generator ``x`` at ``free`` = (A, M) plus boxes ``a_i, b_i, c_i, d_i``.

    Each center is (A, M) or (A, M, u_exp)."""
    gens: list[Generator] = []
    diff: dict[str, Chain] = {}
    if free is not None:
        gens.append(Generator.at("x", *free))
    for i, cen in enumerate(centers, start=1):
        A, M = cen[0], cen[1]
        k = cen[2] if len(cen) > 2 else 1
        b = box_complex(A, M, k, names=(f"a{i}", f"b{i}", f"c{i}", f"d{i}"))
        gens.extend(b.generators)
        diff.update(b.differential)
    return CfkComplex(name, tuple(gens), diff)


def alexander_span(c: CfkComplex) -> tuple[int, int]:
    if not c.generators:
        raise ValueError("empty complex has no Alexander span")
    a = [g.alexander for g in c.generators]
    return min(a), max(a)


# --- unit boxes ---------------------------------------------------------------


@dataclass(frozen=True)
class UnitBox:
    a: str
    b: str
    c: str
    d: str
    center_alexander: int
    center_maslov: int

    @property
    def ids(self) -> tuple[str, str, str, str]:
        return (self.a, self.b, self.c, self.d)

    @property
    def center(self) -> tuple[int, int]:
        return (self.center_alexander, self.center_maslov)


_U1 = poly(Monomial(1, 0))
_V1 = poly(Monomial(0, 1))


def find_unit_boxes(c: CfkComplex) -> list[UnitBox]:
    """Literal unit-box summands in the current basis."""
    incoming: dict[str, set[str]] = {g.id: set() for g in c.generators}
    for src, ch in c.differential.items():
        for tgt in ch:
            if tgt in incoming:
                incoming[tgt].add(src)
    boxes = []
    for g in c.generators:
        da = c.d(g.id)
        if len(da) != 2:
            continue
        b = next((t for t, p in da.items() if p == _U1), None)
        cc = next((t for t, p in da.items() if p == _V1), None)
        if b is None or cc is None or b == cc:
            continue
        db, dc = c.d(b), c.d(cc)
        if len(db) != 1 or len(dc) != 1:
            continue
        (d, pb), = db.items()
        (d2, pc), = dc.items()
        if d != d2 or pb != _V1 or pc != _U1 or c.d(d) or d in (g.id, b, cc):
            continue
        if incoming[g.id] or incoming[b] != {g.id} or incoming[cc] != {g.id} or incoming[d] != {b, cc}:
            continue
        boxes.append(UnitBox(g.id, b, cc, d, g.alexander, g.maslov))
    return boxes


def box_centers(boxes: Iterable[UnitBox]) -> Counter:
    return Counter(bx.center for bx in boxes)


class InvalidComplex(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(map(str, violations)))


def require_valid(c: CfkComplex) -> None:
    bad = validate(c)
    if bad:
        raise InvalidComplex(bad)
