"""Built-in example complexes.

The two eleven-crossing entries are not typed in box by box.  Their HFK-hat
rank tables are stored, and the box centers are recovered at load time by
``solve_box_centers``; the rebuilt complex is then checked against the table.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complex import CfkComplex, Chain, Generator, box_complex, box_sum, direct_sum, single_generator
from .homology import hat_table
from .poly import Monomial, poly


class UnknownKnot(KeyError):
    pass


class RankEquationError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogFacts:
    ribbon: bool
    fusion: int | None
    splits: bool  # expected to be one free generator plus unit boxes
    note: str = ""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    complex: CfkComplex
    facts: CatalogFacts


# HFK-hat ranks keyed by (A, M), read off the Alexander-Maslov tables
HAT_11N42 = {
    (-2, -3): 1, (-2, -2): 1,
    (-1, -2): 4, (-1, -1): 4,
    (0, -1): 6, (0, 0): 7,
    (1, 0): 4, (1, 1): 4,
    (2, 1): 1, (2, 2): 1,
}
HAT_11N34 = {
    (-3, -4): 1, (-3, -3): 1,
    (-2, -3): 3, (-2, -2): 3,
    (-1, -2): 3, (-1, -1): 3,
    (0, -1): 2, (0, 0): 3,
    (1, 0): 3, (1, 1): 3,
    (2, 1): 3, (2, 2): 3,
    (3, 2): 1, (3, 3): 1,
}
# the stevedore knot is thin with Alexander polynomial -2t + 5 - 2/t
HAT_6_1 = {(-1, -1): 2, (0, 0): 5, (1, 1): 2}


def solve_box_centers(table: dict[tuple[int, int], int], free: tuple[int, int] = (0, 0)) -> list[tuple[int, int]]:
    """Box centers (A, M) reproducing ``table`` as one free generator plus unit boxes.

    A box centered at (A, M) puts two generators at (A, M), one at (A+1, M+1)
    and one at (A-1, M-1).  Nothing sits above the top column, so the top
    column consists of box tops alone; peeling columns from the top down fixes
    every multiplicity.
    """
    if not table:
        raise RankEquationError("empty table")
    residual = dict(table)
    residual[free] = residual.get(free, 0) - 1
    a_max = max(a for a, _ in table)
    a_min = min(a for a, _ in table)
    counts: dict[tuple[int, int], int] = {}
    for a in range(a_max, a_min - 1, -1):
        for (aa, m), r in sorted(residual.items()):
            if aa != a or r == 0:
                continue
            # r = 2 x(A, M) + x(A+1, M+1) + x(A-1, M-1); the first two are already known
            rest = r - 2 * counts.get((a, m), 0) - counts.get((a + 1, m + 1), 0)
            if rest < 0:
                raise RankEquationError(f"negative multiplicity forced at (A={a}, M={m})")
            if rest:
                counts[(a - 1, m - 1)] = rest
    centers = [cm for cm, x in sorted(counts.items(), reverse=True) for _ in range(x)]
    rebuilt = hat_table(box_sum(centers, free=free))
    if rebuilt != dict(sorted(table.items())):
        raise RankEquationError("the table is not the homology of a free generator plus unit boxes")
    return centers


def trefoil_staircase() -> CfkComplex:
    """Right-handed trefoil: db = U a + V c."""
    gens = (Generator.at("a", 1, 0), Generator.at("b", 0, -1), Generator.at("c", -1, -2))
    return CfkComplex("trefoil", gens, {"b": Chain({"a": poly(Monomial(1, 0)), "c": poly(Monomial(0, 1))})})


def _figure_eight() -> CfkComplex:
    return direct_sum(single_generator("x"), box_complex(0, 0), name="4_1")


def _build(name: str) -> CatalogEntry:
    if name == "unknot":
        return CatalogEntry(name, single_generator("unknot"), CatalogFacts(True, 0, True, "trivial knot"))
    if name == "trefoil":
        return CatalogEntry(
            name,
            trefoil_staircase(),
            CatalogFacts(False, None, False, "staircase of length 3; negative control for splitting"),
        )
    if name == "4_1":
        return CatalogEntry(
            name,
            _figure_eight(),
            CatalogFacts(False, None, True, "one free generator plus one unit box; not slice"),
        )
    if name == "6_1":
        c = box_sum(solve_box_centers(HAT_6_1), name="6_1")
        return CatalogEntry(
            name,
            c,
            CatalogFacts(
                True,
                1,
                True,
                "reconstructed, not tabulated: thinness and the Alexander polynomial fix HFK-hat, "
                "and the rank equations give two boxes at A = 0; ribbon knots under 11 crossings have fusion number 1",
            ),
        )
    if name == "11n42":
        c = box_sum(solve_box_centers(HAT_11N42), name="11n42")
        return CatalogEntry(
            name,
            c,
            CatalogFacts(True, 1, True, "Kinoshita-Terasaka knot; box centers solved from the HFK-hat rank table"),
        )
    if name == "11n34":
        c = box_sum(solve_box_centers(HAT_11N34), name="11n34")
        return CatalogEntry(
            name,
            c,
            CatalogFacts(
                False,
                None,
                True,
                "Conway knot; box centers solved from the HFK-hat rank table; not slice, so no ribbon fact",
            ),
        )
    raise UnknownKnot(name)


NAMES = ("unknot", "trefoil", "4_1", "6_1", "11n42", "11n34")
_cache: dict[str, CatalogEntry] = {}


def catalog(name: str) -> CatalogEntry:
    if name not in NAMES:
        raise UnknownKnot(f"unknown catalog entry {name!r}; known: {', '.join(NAMES)}")
    if name not in _cache:
        _cache[name] = _build(name)
    return _cache[name]


def entries() -> list[CatalogEntry]:
    return [catalog(n) for n in NAMES]
