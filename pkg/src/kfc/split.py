"""Splitting an order-one complex into one free generator plus unit boxes.

The procedure repeatedly takes a generator x1 of maximal Alexander grading
whose U-multiple is a boundary mod V, normalizes d_V x1 = V x2, finds x3 with
d_U x3 = U x1, normalizes d x3 = U x1 + V x4, clears the residual U-terms of
d x1, and finally removes every differential term running from the rest of the
complex into the new box.  All of it is bookkeeping on the F2 matrix of the
complex; every step is recorded as a BasisChange so the result can be replayed.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass

import numpy as np

from . import kernels
from .complex import (
    BasisChange,
    CfkComplex,
    Chain,
    UnitBox,
    admissible_addends,
    change_from_vector,
    from_matrix,
    gradings,
    require_valid,
    to_matrix,
)
from .homology import hfk_minus
from .poly import Monomial, poly


class HypothesisNotMet(Exception):
    """The input is not (free generator) + (unit boxes); ``step`` names where it broke."""

    def __init__(self, step: str, message: str):
        self.step = step
        super().__init__(f"[{step}] {message}")


@dataclass(frozen=True)
class BoxDecomposition:
    free_generator: str
    boxes: tuple[UnitBox, ...]
    applied_changes: tuple[BasisChange, ...]

    def assembled(self, original: CfkComplex) -> CfkComplex:
        """The literal direct sum the replayed basis should produce, on ``original``'s generators."""
        U1, V1 = poly(Monomial(1, 0)), poly(Monomial(0, 1))
        diff = {}
        for bx in self.boxes:
            diff[bx.a] = Chain({bx.b: U1, bx.c: V1})
            diff[bx.b] = Chain({bx.d: V1})
            diff[bx.c] = Chain({bx.d: U1})
        return CfkComplex(original.name, original.generators, diff)

    @property
    def centers(self) -> list[tuple[int, int]]:
        return sorted((bx.center for bx in self.boxes), reverse=True)


class _Work:
    def __init__(self, c: CfkComplex):
        self.c = c
        self.gens = c.generators
        self.gr = gradings(c)
        self.D = to_matrix(c)
        self.changes: list[BasisChange] = []

    def change(self, target: int, h: np.ndarray) -> None:
        if not h.any():
            return
        self.changes.append(change_from_vector(self.c, target, h))
        kernels.basis_change(self.D, target, h)

    def targets(self, j: int) -> np.ndarray:
        return np.flatnonzero(self.D[:, j])

    def name(self, i: int) -> str:
        return self.gens[i].id

    def pick(self, R: list[int], gr_u: int, gr_v: int, min_u: int) -> list[int]:
        """Generators of R with gr_v fixed and gr_u >= min_u of matching parity (index order)."""
        return [i for i in R if self.gr[i, 1] == gr_v and self.gr[i, 0] >= min_u and (self.gr[i, 0] - gr_u) % 2 == 0]


def _indicator(n: int, idx) -> np.ndarray:
    h = np.zeros(n, np.uint8)
    h[list(idx)] = 1
    return h


def _choose_top(w: _Work, R: list[int], g: tuple[int, int]):
    """A generator t at bigrading g and an addend making t + addend a box top, or None.

    Solves d_U z = U x1 (in C/V, restricted to R) jointly for x1 and z and keeps
    the solution whose part at exactly bigrading g is lexicographically first.
    """
    gu, gv = g
    X = w.pick(R, gu, gv, gu)
    T = [i for i in X if w.gr[i, 0] == gu]
    X = T + [i for i in X if w.gr[i, 0] != gu]
    Z = w.pick(R, gu - 1, gv + 1, gu - 1)
    W = w.pick(R, gu, gv, gu - 2)
    M = np.zeros((len(W), len(X) + len(Z)), np.uint8)
    row = {i: r for r, i in enumerate(W)}
    for k, i in enumerate(X):
        M[row[i], k] = 1
    if Z:
        M[:, len(X):] = w.D[np.ix_(W, Z)]
    N = kernels.nullspace(M)
    if N.shape[0] == 0:
        return None
    Rn, piv = kernels.rref(kernels.as_f2(N))
    if piv.size == 0 or piv[0] >= len(T):
        return None
    sol = Rn[0, : len(X)]
    t = X[int(piv[0])]
    return t, _indicator(len(w.gens), [X[k] for k in np.flatnonzero(sol) if X[k] != t])


def _split_box(w: _Work, R: list[int]) -> tuple[UnitBox, list[int]] | None:
    n = len(w.gens)
    # candidate bigradings: highest Alexander grading first, then first appearance
    seen = {}
    for i in R:
        key = (int(w.gr[i, 0]), int(w.gr[i, 1]))
        seen.setdefault(key, i)
    order = sorted(seen, key=lambda g: (-(g[0] - g[1]) // 2, seen[g]))
    choice = None
    for g in order:
        choice = _choose_top(w, R, g)
        if choice is not None:
            break
    if choice is None:
        return None
    x1, h = choice
    w.change(x1, h)
    gu, gv = int(w.gr[x1, 0]), int(w.gr[x1, 1])

    # d_V x1 = V x2
    out = w.targets(x1)
    v_part = [i for i in out if w.gr[i, 0] == gu - 1]
    v_one = [i for i in v_part if w.gr[i, 1] == gv + 1]
    if not v_one:
        raise HypothesisNotMet(
            "v-partner",
            f"d_V {w.name(x1)} has no term with coefficient exactly V "
            f"(U-free terms: {[w.name(i) for i in v_part] or 'none'})",
        )
    x2 = v_one[0]
    w.change(x2, _indicator(n, [i for i in v_part if i != x2]))

    # d_U x3 = U x1
    Z = w.pick(R, gu - 1, gv + 1, gu - 1)
    Wr = w.pick(R, gu, gv, gu - 2)
    rhs = np.zeros(len(Wr), np.uint8)
    rhs[Wr.index(x1)] = 1
    z = kernels.solve(w.D[np.ix_(Wr, Z)], rhs) if Z else None
    if z is None:
        raise HypothesisNotMet("u-preimage", f"U*{w.name(x1)} is not in the image of d_U")
    chosen = [Z[k] for k in np.flatnonzero(z)]
    base = [i for i in chosen if w.gr[i, 0] == gu - 1]
    if not base:
        raise HypothesisNotMet("u-preimage", f"every preimage of U*{w.name(x1)} is divisible by U")
    x3 = base[0]
    w.change(x3, _indicator(n, [i for i in chosen if i != x3]))
    u_part = [i for i in w.targets(x3) if w.gr[i, 1] == gv]
    if u_part != [x1]:
        raise HypothesisNotMet("u-preimage", f"d_U {w.name(x3)} != U {w.name(x1)} after normalization")

    # d x3 = U x1 + V x4
    v_terms = [i for i in w.targets(x3) if i != x1]
    v_one = [i for i in v_terms if w.gr[i, 0] == gu - 2 and w.gr[i, 1] == gv + 2]
    if not v_one:
        raise HypothesisNotMet("v-partner-of-a", f"d {w.name(x3)} has no term with coefficient exactly V")
    x4 = v_one[0]
    w.change(x4, _indicator(n, [i for i in v_terms if i != x4]))

    # d x1 = V x2 exactly
    rest = [i for i in w.targets(x1) if i != x2]
    if any(w.gr[i, 1] == gv - 1 for i in rest):
        raise HypothesisNotMet("cross-terms", f"d {w.name(x1)} has a U-term without a V factor")
    w.change(x2, _indicator(n, rest))

    B = [x3, x1, x4, x2]
    expect = {x3: [x1, x4], x1: [x2], x4: [x2], x2: []}
    for j, tg in expect.items():
        if sorted(w.targets(j).tolist()) != sorted(tg):
            raise HypothesisNotMet("box-shape", f"{w.name(j)} does not have the unit-box differential")

    O = [i for i in R if i not in B]
    if O:
        _clear_incoming(w, B, O)
    a = w.gens[x3]
    box = UnitBox(w.name(x3), w.name(x1), w.name(x4), w.name(x2), a.alexander, a.maslov)
    return box, O


def _clear_incoming(w: _Work, B: list[int], O: list[int]) -> None:
    """Solve D_BB H + H D_OO = D_BO and rebase each outside y to y + H y."""
    D = w.D
    DBO = D[np.ix_(B, O)]
    if not DBO.any():
        return
    nb, no = len(B), len(O)
    DBB = D[np.ix_(B, B)]
    DOO = D[np.ix_(O, O)]
    L = (np.kron(np.eye(no, dtype=np.uint8), DBB) + np.kron(DOO.T, np.eye(nb, dtype=np.uint8))) % 2
    # unknown H[beta, y] sits at column beta + nb * y (column-major vec)
    diff = w.gr[B][:, None, :] - w.gr[O][None, :, :]
    ok = np.all((diff >= 0) & (diff % 2 == 0), axis=2)
    cols = np.flatnonzero(ok.T.reshape(-1))
    rhs = DBO.T.reshape(-1)
    sol = kernels.solve(kernels.as_f2(L[:, cols]), rhs)
    if sol is None:
        raise HypothesisNotMet("summand", "terms from the rest of the complex into the box cannot be removed")
    H = np.zeros(nb * no, np.uint8)
    H[cols] = sol
    H = H.reshape(no, nb)
    n = len(w.gens)
    for k, y in enumerate(O):
        if H[k].any():
            w.change(y, _indicator(n, [B[b] for b in np.flatnonzero(H[k])]))
    if D[np.ix_(B, O)].any():
        raise HypothesisNotMet("summand", "residual terms into the box after elimination")


def split_ord1(c: CfkComplex) -> BoxDecomposition:
    """Decompose a valid order-one complex as one free generator plus unit boxes."""
    require_valid(c)
    if not c.generators:
        raise HypothesisNotMet("free-generator", "empty complex")
    hm = hfk_minus(c)
    if hm.torsion_order > 1:
        raise HypothesisNotMet("torsion-order", f"Ord_U = {hm.torsion_order} > 1")
    if hm.free_rank != 1:
        raise HypothesisNotMet("free-rank", f"HFK^- has free rank {hm.free_rank}, expected 1")
    w = _Work(c)
    R = list(range(len(c)))
    boxes: list[UnitBox] = []
    while len(R) > 1:
        res = _split_box(w, R)
        if res is None:
            raise HypothesisNotMet(
                "box-top",
                f"no generator among {[w.name(i) for i in R]} has its U-multiple in the image of d_U",
            )
        box, R = res
        boxes.append(box)
    free = R[0]
    if w.D[:, free].any():
        raise HypothesisNotMet("free-generator", f"leftover generator {w.name(free)} has nonzero differential")
    dec = BoxDecomposition(w.name(free), tuple(boxes), tuple(w.changes))
    final = from_matrix(c.name, c.generators, w.D)
    if final != dec.assembled(c):
        raise HypothesisNotMet("replay", "final basis is not the assembled direct sum")
    return dec


def default_seed() -> int:
    return int(os.environ.get("KFC_SEED", "0"))


def obfuscate(c: CfkComplex, seed: int | None = None, steps: int = 50) -> tuple[CfkComplex, list[BasisChange]]:
    """Apply ``steps`` random grading-preserving basis changes; returns the result and the changes.

    The changes are involutions, so replaying them in reverse order undoes them.
    """
    require_valid(c)
    rng = random.Random(default_seed() if seed is None else seed)
    n = len(c)
    gr = gradings(c)
    D = to_matrix(c)
    options = {x: admissible_addends(gr, x).tolist() for x in range(n)}
    targets = [x for x in range(n) if options[x]]
    changes: list[BasisChange] = []
    if not targets:
        return c, changes
    for _ in range(steps):
        x = rng.choice(targets)
        adds = options[x]
        ys = rng.sample(adds, rng.randint(1, min(3, len(adds))))
        h = _indicator(n, ys)
        changes.append(change_from_vector(c, x, h))
        kernels.basis_change(D, x, h)
    return from_matrix(c.name, c.generators, D), changes
