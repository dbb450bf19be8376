"""Time the numba and numpy kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3]

Each row reports the best of ``--repeat`` runs after one warm-up call (the
warm-up absorbs numba compilation). Results are checked equal across backends.
"""

import argparse
import time
from itertools import combinations, permutations

import numpy as np

from exttsp import kernels
from exttsp.generators import gen_random_graph
from exttsp.model import make_discount


def _best_time(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    g = gen_random_graph(60, 400, seed=1)
    table = make_discount("linear", 4).array
    orders = np.array([np.random.default_rng(s).permutation(g.n) for s in range(2000)], dtype=np.int64)
    yield "score_orders n=60 m=400 x2000", lambda b: b.score_orders(orders, g.eu, g.ev, g.ew, table)

    h = gen_random_graph(9, 20, seed=2)
    yield "brute_force n=9 m=20", lambda b: b.brute_force(h.n, h.eu, h.ev, h.ew, table, True)

    s = gen_random_graph(12, 30, seed=3)
    subsets = np.array(list(combinations(range(s.n), 4)), dtype=np.int64)
    perms = np.array(list(permutations(range(4))), dtype=np.int64)
    order = np.arange(s.n, dtype=np.int64)
    yield "best_append_move n=12 ell=4", lambda b: b.best_append_move(
        order, subsets, perms, s.eu, s.ev, s.ew, table)


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = sorted(kernels.BACKENDS)
    print(f"{'case':32s}" + "".join(f"{n:>12s}" for n in names) + "     speedup  equal")
    for label, fn in cases():
        results = {n: _best_time(lambda: fn(kernels.BACKENDS[n]), args.repeat) for n in names}
        times = "".join(f"{results[n][0] * 1000:10.2f}ms" for n in names)
        if "numba" in results:
            speed = results["numpy"][0] / results["numba"][0]
            equal = _same(results["numpy"][1], results["numba"][1])
            print(f"{label:32s}{times}  {speed:9.1f}x  {equal}")
        else:
            print(f"{label:32s}{times}  (numba not installed)")


if __name__ == "__main__":
    main()
