"""HFK^- (V = 0), its mirror (U = 0), HFK-hat (U = V = 0) and the torsion order."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .complex import CfkComplex, Generator, to_matrix

HatTable = dict[tuple[int, int], int]


@dataclass(frozen=True)
class UChainComplex:
    """Chain complex over a univariate polynomial ring.

    ``variable`` is the surviving variable.  ``differential[src][tgt]`` is the
    exponent of that variable on ``tgt`` in ``d src``.
    """

    variable: str
    generators: tuple[Generator, ...]
    differential: dict[str, dict[str, int]]

    def level(self, g: Generator) -> int:
        # multiplication by the surviving variable lowers the level by one
        return g.alexander if self.variable == "U" else -g.alexander

    def degree(self, g: Generator) -> int:
        return g.gr_u if self.variable == "U" else g.gr_v


def _reduce(c: CfkComplex, kill: str) -> UChainComplex:
    keep = "U" if kill == "V" else "V"
    diff: dict[str, dict[str, int]] = {}
    for src, ch in c.differential.items():
        row = {}
        for m, tgt in ch.terms():
            if kill == "V" and m.v_exp == 0:
                row[tgt] = m.u_exp
            elif kill == "U" and m.u_exp == 0:
                row[tgt] = m.v_exp
        if row:
            diff[src] = row
    return UChainComplex(keep, c.generators, diff)


def reduce_mod_v(c: CfkComplex) -> UChainComplex:
    return _reduce(c, "V")


def reduce_mod_u(c: CfkComplex) -> UChainComplex:
    return _reduce(c, "U")


@dataclass(frozen=True)
class UModuleSummary:
    free_rank: int
    torsion_exponents: tuple[int, ...]
    # (alexander, maslov, exponent) per summand generator; exponent 0 marks a free summand
    summands: tuple[tuple[int, int, int], ...] = ()
    graded_table: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def torsion_order(self) -> int:
        return max(self.torsion_exponents, default=0)


def u_module_homology(uc: UChainComplex) -> UModuleSummary:
    """Free rank and torsion exponents by boundary-matrix reduction.

    Generators are ordered by decreasing level (ties by degree), which makes the
    matrix strictly upper triangular; each persistence pair (y, x) with
    ``d x = t^k y`` is a ``F[t]/t^k`` summand generated by y, and each
    unpaired generator is a free summand.
    """
    gens = uc.generators
    n = len(gens)
    if n == 0:
        return UModuleSummary(0, ())
    order = sorted(range(n), key=lambda i: (-uc.level(gens[i]), uc.degree(gens[i]), i))
    pos = {gens[i].id: p for p, i in enumerate(order)}
    R = np.zeros((n, n), np.uint8)
    for src, row in uc.differential.items():
        for tgt in row:
            R[pos[tgt], pos[src]] = 1
    if np.any(np.tril(R)):
        raise ValueError("differential is not compatible with the filtration order")
    low = kernels.reduce_boundary(R)
    paired = set()
    summands = []
    torsion = []
    for j in range(n):
        lo = int(low[j])
        if lo < 0:
            continue
        y, x = gens[order[lo]], gens[order[j]]
        paired.update((lo, j))
        k = uc.level(y) - uc.level(x)
        if k > 0:
            torsion.append(k)
            summands.append((y.alexander, y.maslov, k))
    free = 0
    for p in range(n):
        if p not in paired:
            g = gens[order[p]]
            free += 1
            summands.append((g.alexander, g.maslov, 0))
    summands.sort()
    table = Counter((a, m) for a, m, _ in summands)
    return UModuleSummary(free, tuple(sorted(torsion)), tuple(summands), dict(sorted(table.items())))


def hfk_minus(c: CfkComplex) -> UModuleSummary:
    return u_module_homology(reduce_mod_v(c))


def torsion_order(c: CfkComplex, via: str = "V") -> int:
    """Ord_U; ``via="U"`` computes the same invariant from the U = 0 quotient."""
    uc = reduce_mod_v(c) if via == "V" else reduce_mod_u(c)
    return u_module_homology(uc).torsion_order


def hat_table(c: CfkComplex) -> HatTable:
    """Ranks of the homology of C/(U, V), keyed by (alexander, maslov)."""
    if not c.generators:
        return {}
    D = to_matrix(c)
    gens = c.generators
    groups: dict[tuple[int, int], list[int]] = {}
    for i, g in enumerate(gens):
        groups.setdefault(g.bigrading, []).append(i)
    # only coefficient-1 entries survive; they connect bigrading g to g - (1, 1)
    rank_out = {}
    for g, cols in groups.items():
        rows = groups.get((g[0] - 1, g[1] - 1))
        rank_out[g] = 0 if not rows else int(kernels.rank(np.ascontiguousarray(D[np.ix_(rows, cols)])))
    table: HatTable = {}
    for g, cols in groups.items():
        incoming = rank_out.get((g[0] + 1, g[1] + 1), 0)
        r = len(cols) - rank_out[g] - incoming
        if r:
            gen = gens[cols[0]]
            key = (gen.alexander, gen.maslov)
            table[key] = table.get(key, 0) + r
    return dict(sorted(table.items()))


def hat_rank(c: CfkComplex) -> int:
    return sum(hat_table(c).values())


def column_ranks(table: HatTable) -> dict[int, int]:
    out: dict[int, int] = {}
    for (a, _), r in table.items():
        out[a] = out.get(a, 0) + r
    return dict(sorted(out.items()))


# --- text rendering ---------------------------------------------------------


def format_hat_grid(table: HatTable) -> str:
    if not table:
        return "(zero)"
    As = [a for a, _ in table]
    Ms = [m for _, m in table]
    a_lo, a_hi, m_lo, m_hi = min(As), max(As), min(Ms), max(Ms)
    w = max(3, max(len(str(r)) for r in table.values()) + 1, len(str(a_lo)) + 1, len(str(a_hi)) + 1)
    lab = max(len(f"M={m}") for m in range(m_lo, m_hi + 1))
    lines = []
    for m in range(m_hi, m_lo - 1, -1):
        cells = "".join(str(table.get((a, m), ".")).rjust(w) for a in range(a_lo, a_hi + 1))
        lines.append(f"{f'M={m}'.rjust(lab)} |{cells}")
    lines.append(" " * lab + " +" + "-" * (w * (a_hi - a_lo + 1)))
    lines.append(" " * lab + "  " + "".join(str(a).rjust(w) for a in range(a_lo, a_hi + 1)) + "  (A)")
    return "\n".join(lines)


def homology_report(c: CfkComplex) -> dict:
    s = hfk_minus(c)
    table = hat_table(c)
    return {
        "name": c.name,
        "free_rank": s.free_rank,
        "torsion_exponents": list(s.torsion_exponents),
        "ord": s.torsion_order,
        "hat_rank": sum(table.values()),
        "hat_table": [{"alexander": a, "maslov": m, "rank": r} for (a, m), r in table.items()],
        "hat_column_ranks": {str(a): r for a, r in column_ranks(table).items()},
    }


def format_homology_report(rep: dict) -> str:
    table = {(e["alexander"], e["maslov"]): e["rank"] for e in rep["hat_table"]}
    tors = ", ".join(map(str, rep["torsion_exponents"])) or "none"
    lines = [
        f"complex: {rep['name']}",
        f"HFK^- free rank: {rep['free_rank']}",
        f"HFK^- torsion exponents: {tors}",
        f"Ord_U: {rep['ord']}",
        f"HFK-hat total rank: {rep['hat_rank']}",
        "HFK-hat (Alexander-Maslov plane):",
        format_hat_grid(table),
    ]
    return "\n".join(lines)
