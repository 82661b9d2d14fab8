"""Time the numba kernels against their numpy fallbacks on corpus matroids.

    python benchmarks/bench_kernels.py [--repeat 3] [--names r10 mk5dual cube16]

Both paths are called directly (independent of MATRO_DISABLE_NUMBA), and
their outputs are compared before anything is timed.
"""

import argparse
import time

import numpy as np

from matro import _kernels as K
from matro import io
from matro.bergman import _permutations


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(M, rng):
    bases = M.array
    masks = rng.integers(0, 1 << M.n, size=2000, dtype=np.uint64)
    full = np.uint64((1 << M.n) - 1)
    perms = _permutations(M.r)
    w = rng.integers(-5, 6, size=M.n).astype(np.int64)
    return {
        "rank x2000": (
            lambda: [K.rank_np(bases, int(m)) for m in masks],
            lambda: [int(K.rank_nb(bases, m)) for m in masks],
        ),
        "closure x2000": (
            lambda: [K.closure_np(bases, int(m), int(full)) for m in masks],
            lambda: [int(K.closure_nb(bases, m, full)) for m in masks],
        ),
        "costs": (lambda: K.costs_np(bases, w), lambda: K.costs_nb(bases, w)),
        "exchange": (lambda: K.exchange_violation_np(bases, M.n), lambda: K.exchange_violation_nb(bases, M.n)),
        "local_partitions": (
            lambda: K.local_partitions_np(bases, M.n, M.r, perms),
            lambda: K.local_partitions_nb(bases, M.n, M.r, perms),
        ),
    }


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--names", nargs="+", default=["k4", "r10", "mk5dual", "cube16"])
    args = ap.parse_args()
    if K.numba is None:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(0)
    print(f"{'matroid':<9}{'kernel':<18}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for name in args.names:
        _, M = io.load(name)
        for label, (np_fn, nb_fn) in cases(M, rng).items():
            assert same(np_fn(), nb_fn()), f"{name}/{label}: numpy and numba disagree"
            t_np = best_of(np_fn, args.repeat)
            t_nb = best_of(nb_fn, args.repeat)
            print(f"{name:<9}{label:<18}{t_np:>10.4f}{t_nb:>10.4f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
