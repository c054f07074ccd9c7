"""Dense F2 kernels: boundary reduction, elimination, basis changes.

Every kernel has a numba and a numpy implementation.  The numba path is used
when numba imports and ``KFC_DISABLE_NUMBA`` is unset; both are importable
explicitly (``*_nb`` / ``*_np``) so they can be benchmarked and cross-checked.
Matrices are ``uint8`` with entries in {0, 1}.
"""
from __future__ import annotations

import os

import numpy as np

NUMBA_DISABLED = os.environ.get("KFC_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if NUMBA_DISABLED:
        raise ImportError("disabled by KFC_DISABLE_NUMBA")
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn


# --- boundary-matrix reduction --------------------------------------------


@njit(cache=True)
def reduce_boundary_nb(R):
    n = R.shape[1]
    m = R.shape[0]
    low = np.full(n, -1, np.int64)
    owner = np.full(m, -1, np.int64)
    for j in range(n):
        while True:
            lo = -1
            for i in range(m - 1, -1, -1):
                if R[i, j]:
                    lo = i
                    break
            if lo < 0:
                break
            k = owner[lo]
            if k < 0:
                owner[lo] = j
                low[j] = lo
                break
            for i in range(lo + 1):
                R[i, j] ^= R[i, k]
    return low


def reduce_boundary_np(R):
    n = R.shape[1]
    low = np.full(n, -1, np.int64)
    owner = np.full(R.shape[0], -1, np.int64)
    for j in range(n):
        col = R[:, j]
        while True:
            nz = np.flatnonzero(col)
            if nz.size == 0:
                break
            lo = nz[-1]
            k = owner[lo]
            if k < 0:
                owner[lo] = j
                low[j] = lo
                break
            col ^= R[:, k]
    return low


# --- Gaussian elimination ---------------------------------------------------


@njit(cache=True)
def rref_nb(M):
    R = M.copy()
    rows, cols = R.shape
    pivots = np.full(min(rows, cols), -1, np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if R[i, c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(cols):
                t = R[r, k]
                R[r, k] = R[p, k]
                R[p, k] = t
        for i in range(rows):
            if i != r and R[i, c]:
                for k in range(c, cols):
                    R[i, k] ^= R[r, k]
        pivots[r] = c
        r += 1
    return R, pivots[:r]


def rref_np(M):
    R = np.array(M, dtype=np.uint8, copy=True)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        hit = np.flatnonzero(R[:, c])
        hit = hit[hit != r]
        if hit.size:
            R[hit] ^= R[r]
        pivots.append(c)
        r += 1
    return R, np.array(pivots, dtype=np.int64)


@njit(cache=True)
def rank_nb(M):
    R = M.copy()
    rows, cols = R.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if R[i, c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(c, cols):
                t = R[r, k]
                R[r, k] = R[p, k]
                R[p, k] = t
        for i in range(r + 1, rows):
            if R[i, c]:
                for k in range(c, cols):
                    R[i, k] ^= R[r, k]
        r += 1
    return r


def rank_np(M):
    R = np.array(M, dtype=np.uint8, copy=True)
    rows, cols = R.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        below = r + 1 + np.flatnonzero(R[r + 1:, c])
        if below.size:
            R[below] ^= R[r]
        r += 1
    return r


# --- basis change x -> x + sum_y h[y] y -------------------------------------


@njit(cache=True)
def basis_change_nb(D, x, h):
    n = D.shape[0]
    # D <- D P: column x picks up D h
    for i in range(n):
        acc = 0
        for y in range(n):
            if h[y]:
                acc ^= D[i, y]
        D[i, x] ^= acc
    # D <- P D: every row y with h[y] picks up row x
    for y in range(n):
        if h[y]:
            for k in range(n):
                D[y, k] ^= D[x, k]


def basis_change_np(D, x, h):
    sel = np.flatnonzero(h)
    if sel.size == 0:
        return
    D[:, x] ^= np.bitwise_xor.reduce(D[:, sel], axis=1)
    D[sel] ^= D[x]


if NUMBA_AVAILABLE:
    reduce_boundary, rref, rank, basis_change = reduce_boundary_nb, rref_nb, rank_nb, basis_change_nb
else:
    reduce_boundary, rref, rank, basis_change = reduce_boundary_np, rref_np, rank_np, basis_change_np


def as_f2(M) -> np.ndarray:
    return np.ascontiguousarray(M, dtype=np.uint8)


def solve(A, b):
    """A particular solution of ``A x = b`` over F2 (free variables zero), or None."""
    A = as_f2(A)
    rows, cols = A.shape
    if cols == 0:
        return np.zeros(0, np.uint8) if not np.any(b) else None
    aug = np.zeros((rows, cols + 1), np.uint8)
    aug[:, :cols] = A
    aug[:, cols] = b
    R, piv = rref(aug)
    if piv.size and piv[-1] == cols:
        return None
    x = np.zeros(cols, np.uint8)
    for r, c in enumerate(piv):
        x[c] = R[r, cols]
    return x


def nullspace(A) -> np.ndarray:
    """Rows spanning ``{x : A x = 0}``, one per free column, in column order."""
    A = as_f2(A)
    rows, cols = A.shape
    if rows == 0:
        return np.eye(cols, dtype=np.uint8)
    R, piv = rref(A)
    pivset = set(int(c) for c in piv)
    free = [c for c in range(cols) if c not in pivset]
    N = np.zeros((len(free), cols), np.uint8)
    for k, f in enumerate(free):
        N[k, f] = 1
        for r, c in enumerate(piv):
            N[k, c] = R[r, f]
    return N
