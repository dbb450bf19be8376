"""Greedy heaviest-edge chaining (a 2k-approximation).

Start somewhere, then keep appending the unplaced neighbour of the last
placed vertex with the heaviest connecting edge. When the last vertex has no
unplaced neighbour the walk restarts at the unplaced endpoint of the
heaviest edge between unplaced vertices, or at any unplaced vertex if no such
edge is left.

Ties are broken by a rank: lowest vertex id by default, or the order of an
explicit preference list.
"""

from __future__ import annotations

import heapq
import time
from typing import Sequence

from .model import DiscountFunction, Graph, InputError, Layout, SolveReport, report


def _ranks(g: Graph, tie_break) -> list[int]:
    """``rank[v]`` for ``v`` in ``1..n``; lower rank wins a tie."""
    if tie_break is None or tie_break == "lowest_id":
        return list(range(g.n + 1))
    if isinstance(tie_break, str):
        raise InputError(f"unknown tie-break {tie_break!r}")
    rank = [0] * (g.n + 1)
    placed = set()
    r = 0
    for v in tie_break:
        v = int(v)
        if not 1 <= v <= g.n:
            raise InputError(f"preference list names vertex {v} outside 1..{g.n}")
        if v in placed:
            continue
        placed.add(v)
        rank[v] = r
        r += 1
    for v in range(1, g.n + 1):
        if v not in placed:
            rank[v] = r
            r += 1
    return rank


def _edge_key(rank, u, v, w):
    a, b = (u, v) if rank[u] < rank[v] else (v, u)
    return (-w, rank[a], rank[b], a, b)


def _resolve_start(g: Graph, start, rank) -> int:
    if start is None or start == "auto":
        if g.edges:
            key = min(_edge_key(rank, u, v, w) for u, v, w in g.edges)
            return key[3]
        return min(range(1, g.n + 1), key=rank.__getitem__)
    start = int(start)
    if not 1 <= start <= g.n:
        raise InputError(f"start vertex {start} outside 1..{g.n}")
    return start


def greedy(g: Graph, f: DiscountFunction, start="auto", tie_break="lowest_id") -> SolveReport:
    """Priority-queue greedy, O(m log n)."""
    if g.n == 0:
        raise InputError("greedy needs a nonempty graph")
    t0 = time.perf_counter()
    rank = _ranks(g, tie_break)
    first = _resolve_start(g, start, rank)

    placed = [False] * (g.n + 1)
    stamp = [0] * (g.n + 1)
    near: list = []  # (-w, rank, v, stamp) for unplaced neighbours of the last vertex
    current: dict[int, float] = {}
    edge_heap = [_edge_key(rank, u, v, w) for u, v, w in g.edges]
    heapq.heapify(edge_heap)
    rank_heap = [(rank[v], v) for v in range(1, g.n + 1)]
    heapq.heapify(rank_heap)
    order: list[int] = []
    updates = 0
    restarts = 0

    def place(x: int) -> None:
        nonlocal current, updates
        placed[x] = True
        order.append(x)
        fresh = {y: w for y, w in g.adj[x] if not placed[y]}
        for y in current:
            if y not in fresh and not placed[y]:
                stamp[y] += 1
                updates += 1
        for y, w in fresh.items():
            if current.get(y) != w:
                stamp[y] += 1
                updates += 1
                heapq.heappush(near, (-w, rank[y], y, stamp[y]))
        current = fresh

    place(first)
    while len(order) < g.n:
        nxt = None
        while near:
            _, _, y, s = near[0]
            if placed[y] or stamp[y] != s:
                heapq.heappop(near)
                continue
            nxt = y
            break
        if nxt is None:
            restarts += 1
            while edge_heap and (placed[edge_heap[0][3]] or placed[edge_heap[0][4]]):
                heapq.heappop(edge_heap)
            if edge_heap:
                nxt = edge_heap[0][3]
            else:
                while placed[rank_heap[0][1]]:
                    heapq.heappop(rank_heap)
                nxt = rank_heap[0][1]
        place(nxt)

    layout = Layout(tuple(order))
    millis = (time.perf_counter() - t0) * 1000.0
    return report("greedy", g, layout, f, priority_updates=updates, restarts=restarts,
                  start=first, millis=millis)


def greedy_rescan(g: Graph, f: DiscountFunction, start="auto", tie_break="lowest_id") -> SolveReport:
    """Reference O(n*m) greedy that rescans instead of keeping heaps.

    Same tie-breaking as :func:`greedy`, so both return identical layouts.
    """
    if g.n == 0:
        raise InputError("greedy needs a nonempty graph")
    rank = _ranks(g, tie_break)
    x = _resolve_start(g, start, rank)
    placed = [False] * (g.n + 1)
    order = []
    restarts = 0
    while True:
        placed[x] = True
        order.append(x)
        if len(order) == g.n:
            break
        options = [(-w, rank[y], y) for y, w in g.adj[x] if not placed[y]]
        if options:
            x = min(options)[2]
            continue
        restarts += 1
        free_edges = [_edge_key(rank, u, v, w) for u, v, w in g.edges if not placed[u] and not placed[v]]
        if free_edges:
            x = min(free_edges)[3]
        else:
            x = min((v for v in range(1, g.n + 1) if not placed[v]), key=rank.__getitem__)
    return report("greedy-rescan", g, Layout(tuple(order)), f, restarts=restarts)


def consecutive_weight(g: Graph, order: Sequence[int]) -> float:
    """Total weight of edges joining consecutive vertices of ``order``."""
    return sum(g.weight(a, b) for a, b in zip(order, order[1:]))
