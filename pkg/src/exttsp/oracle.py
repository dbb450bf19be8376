"""Exhaustive reference solvers.

Deliberately naive: permutation enumeration for the layout optimum and
subset enumeration for the 2-matching. Limits are arguments so a caller can
raise them on purpose.
"""

from __future__ import annotations

from . import kernels
from .model import Graph, InfeasibleError, Layout, DiscountFunction, score

DEFAULT_PERMUTATION_LIMIT = 10
DEFAULT_EDGE_LIMIT = 20


def brute_force_opt(g: Graph, f: DiscountFunction, limit: int = DEFAULT_PERMUTATION_LIMIT,
                    prune_reversal: bool = True) -> tuple[Layout, float]:
    """Maximise the objective over every ordering of ``g``'s vertices.

    With ``prune_reversal`` only orders whose first vertex id is smaller than
    the last are scored, since a layout and its reverse score the same.
    """
    if g.n > limit:
        raise InfeasibleError(f"brute force refused: n={g.n} exceeds limit {limit} ({g.n}! layouts)")
    if g.n == 0:
        return Layout(()), 0.0
    perm, _, _ = kernels.brute_force(g.n, g.eu, g.ev, g.ew, f.array, prune_reversal)
    layout = Layout(tuple(int(v) + 1 for v in perm))
    return layout, score(g, layout, f)


def brute_force_2matching(g: Graph, limit: int = DEFAULT_EDGE_LIMIT) -> list[tuple[int, int, float]]:
    """Heaviest edge subset with every vertex degree at most 2.

    Depth-first include/exclude over the edge list; an edge is only included
    while both endpoints still have spare degree.
    """
    if g.m > limit:
        raise InfeasibleError(f"2-matching brute force refused: m={g.m} exceeds limit {limit}")
    edges = g.edges
    degree = [0] * (g.n + 1)
    chosen: list[int] = []
    best = [-1.0, []]

    def visit(i: int, weight: float) -> None:
        if i == len(edges):
            if weight > best[0]:
                best[0] = weight
                best[1] = list(chosen)
            return
        u, v, w = edges[i]
        if degree[u] < 2 and degree[v] < 2:
            degree[u] += 1
            degree[v] += 1
            chosen.append(i)
            visit(i + 1, weight + w)
            chosen.pop()
            degree[u] -= 1
            degree[v] -= 1
        visit(i + 1, weight)

    visit(0, 0.0)
    return [edges[i] for i in best[1]]
