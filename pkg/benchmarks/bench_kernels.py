"""Time the numba kernels against their numpy fallbacks on obfuscated box sums.

    python3 benchmarks/bench_kernels.py [--boxes 16 32 64] [--repeat 5]

The first numba call of each kernel is done before timing so compilation is
excluded.  Both paths are checked to agree on every input before timing.
"""
import argparse
import random
import time

import numpy as np

from kfc import kernels
from kfc.complex import box_sum, to_matrix
from kfc.split import obfuscate


def workload(n_boxes, seed):
    rng = random.Random(seed)
    centers = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n_boxes)]
    c, _ = obfuscate(box_sum(centers), seed=seed, steps=20 * n_boxes)
    return to_matrix(c)


def boundary_input(D):
    # any strictly upper-triangular F2 matrix exercises the same inner loop
    return np.ascontiguousarray(np.triu(D | D.T, 1))


def bench(fn, make, repeat):
    best = float("inf")
    for _ in range(repeat):
        arg = make()
        t = time.perf_counter()
        fn(*arg)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--boxes", type=int, nargs="+", default=[16, 32, 64, 128])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not kernels.NUMBA_AVAILABLE:
        print("numba unavailable (or KFC_DISABLE_NUMBA set); timing numpy only")

    print(f"{'kernel':<16}{'n':>6}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for nb in args.boxes:
        D = workload(nb, seed=nb)
        n = D.shape[0]
        h = np.zeros(n, np.uint8)
        h[1::7] = 1
        h[0] = 0
        cases = {
            "reduce_boundary": (kernels.reduce_boundary_np, kernels.reduce_boundary_nb, lambda: (boundary_input(D).copy(),)),
            "rank": (kernels.rank_np, kernels.rank_nb, lambda: (D | D.T,)),
            "rref": (kernels.rref_np, kernels.rref_nb, lambda: (D | D.T,)),
            "basis_change": (kernels.basis_change_np, kernels.basis_change_nb, lambda: (D.copy(), 0, h)),
        }
        for name, (f_np, f_nb, make) in cases.items():
            a, b = make(), make()
            r_np, r_nb = f_np(*a), f_nb(*b)
            if name == "basis_change":
                assert np.array_equal(a[0], b[0])
            elif name == "rref":
                assert np.array_equal(r_np[0], r_nb[0]) and np.array_equal(r_np[1], r_nb[1])
            else:
                assert np.array_equal(np.asarray(r_np), np.asarray(r_nb))
            t_np = bench(f_np, make, args.repeat)
            t_nb = bench(f_nb, make, args.repeat)
            print(f"{name:<16}{n:>6}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
