"""Time the numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 100 200 400] [--repeat 3]

The numba timings exclude the first (compiling) call. Run with
``BRANDRANK_DISABLE_NUMBA=1`` to time the numpy path alone.
"""

import argparse
import time

import numpy as np

from brandrank import kernels
from brandrank.graph_model import DistanceWeights
from brandrank.paths import all_pairs_shortest

_use_numba = kernels.use_numba


def random_lengths(n, rng, avg_out=4):
    edges = {}
    for i in range(n):
        for j in rng.choice(n, size=avg_out, replace=False):
            if i != j:
                edges[(i, int(j))] = int(rng.integers(1, 5))
    return edges


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(n, repeat, rng):
    edges = random_lengths(n, rng)
    t = all_pairs_shortest(DistanceWeights(edges, 4), range(n))
    dist0 = np.full((n, n), kernels.UNREACHABLE, dtype=np.int64)
    cnt0 = np.zeros((n, n), dtype=np.int64)
    np.fill_diagonal(dist0, 0)
    np.fill_diagonal(cnt0, 1)
    for (i, j), w in edges.items():
        dist0[i, j], cnt0[i, j] = w, 1
    dist, count = np.asarray(t.dist), np.asarray(t.count)
    values = rng.random(n)

    cases = {
        "floyd_count": lambda: kernels.floyd_count(dist0.copy(), cnt0.copy()),
        "betweenness": lambda: kernels.betweenness(dist, count),
        "distance_mass": lambda: kernels.distance_mass(dist, values),
    }
    rows = []
    for name, fn in cases.items():
        t_nb = float("nan")
        if kernels.HAVE_NUMBA:
            fn()  # compile
            t_nb = best_of(fn, repeat)
        kernels.use_numba = lambda: False
        try:
            t_np = best_of(fn, repeat)
        finally:
            kernels.use_numba = _use_numba
        rows.append((name, n, t_nb, t_np))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<14} {'n':>5} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for n in args.sizes:
        for name, size, t_nb, t_np in bench(n, args.repeat, rng):
            print(f"{name:<14} {size:>5} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>8.1f}")


if __name__ == "__main__":
    main()
