"""Remove-and-append local search.

A move takes ``ell`` vertices out of the current order (the rest keep their
relative order), tries every internal order of the removed block appended at
the end, and keeps the best resulting full layout. Each iteration applies the
best move over all ``C(n, ell)`` subsets if it gains at least
``delta / n`` times the current score.
"""

from __future__ import annotations

import math
import time
from itertools import combinations, permutations

import numpy as np

from . import kernels
from .greedy import greedy
from .model import (DiscountFunction, Graph, InfeasibleError, InputError, Layout, SolveReport,
                    report, score)

DEFAULT_SUBSET_LIMIT = 7

# Gains at or below this (relative to the current score) are float noise.
_NOISE = 1e-12


def optimal_subsequence(g: Graph, subset, f: DiscountFunction,
                        limit: int = DEFAULT_SUBSET_LIMIT) -> tuple[tuple[int, ...], float]:
    """Best ordering of ``subset`` scored on its induced edges alone."""
    subset = sorted(set(int(v) for v in subset))
    if len(subset) > limit:
        raise InfeasibleError(f"subset of size {len(subset)} exceeds factorial limit {limit}")
    if not subset:
        return (), 0.0
    index = {v: i for i, v in enumerate(subset)}
    inner = [(index[u], index[v], w) for u, v, w in g.edges if u in index and v in index]
    eu = np.array([a for a, _, _ in inner], dtype=np.int64)
    ev = np.array([b for _, b, _ in inner], dtype=np.int64)
    ew = np.array([w for _, _, w in inner], dtype=np.float64)
    perm, value, _ = kernels.brute_force(len(subset), eu, ev, ew, f.array, False)
    return tuple(subset[i] for i in perm), value


def apply_move(order, block) -> tuple[int, ...]:
    """``order`` with the vertices of ``block`` moved, in block order, to the end."""
    moved = set(block)
    return tuple(v for v in order if v not in moved) + tuple(block)


def local_search_solve(g: Graph, f: DiscountFunction, ell: int, delta: float = 0.0,
                       init: Layout | None = None, limit: int = DEFAULT_SUBSET_LIMIT) -> SolveReport:
    if not f.k <= ell <= g.n:
        raise InputError(f"need k <= ell <= n, got k={f.k}, ell={ell}, n={g.n}")
    if ell > limit:
        raise InfeasibleError(f"ell={ell} exceeds factorial limit {limit}")
    if delta < 0:
        raise InputError("delta must be non-negative")
    t0 = time.perf_counter()
    layout = init if init is not None else greedy(g, f).layout
    if layout.n != g.n:
        raise InputError("initial layout does not match the graph")

    subsets = np.array(list(combinations(range(g.n), ell)), dtype=np.int64)
    perms = np.array(list(permutations(range(ell))), dtype=np.int64)
    current = score(g, layout, f)
    initial = current
    trajectory = [current]
    accepted = 0
    evaluated = 0
    while g.edges:
        order0 = np.asarray(layout.order, dtype=np.int64) - 1
        s, p, value = kernels.best_append_move(order0, subsets, perms, g.eu, g.ev, g.ew, f.array)
        evaluated += len(subsets) * len(perms)
        gain = value - current
        if gain <= _NOISE * max(1.0, abs(current)) or gain < delta / g.n * current:
            break
        block = [int(subsets[s, i]) + 1 for i in perms[p]]
        layout = Layout(apply_move(layout.order, block))
        current = score(g, layout, f)
        trajectory.append(current)
        accepted += 1

    return report("local-search", g, layout, f, accepted_moves=accepted,
                  evaluated_moves=evaluated, initial_value=initial, ell=ell, delta=delta,
                  move_bound=math.ceil(g.n / delta) if delta > 0 else None,
                  trajectory=trajectory, millis=(time.perf_counter() - t0) * 1000.0)
