"""Cycle-cover approximation: 2-matching, break cycles, concatenate paths."""

from __future__ import annotations

import time
from dataclasses import dataclass

import networkx as nx

from .model import DiscountFunction, Graph, InvariantViolation, Layout, SolveReport, report


@dataclass(frozen=True)
class TwoMatching:
    """Edge subset in which every vertex has degree at most 2."""

    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        deg: dict[int, int] = {}
        for u, v, _ in self.edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        bad = [v for v, d in deg.items() if d > 2]
        if bad:
            raise InvariantViolation(f"vertices {sorted(bad)} have degree > 2")
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @property
    def weight(self) -> float:
        return float(sum(w for _, _, w in self.edges))


def max_weight_2matching(g: Graph) -> TwoMatching:
    """Exact maximum-weight simple 2-matching.

    Node-splitting gadget: vertex ``v`` becomes two copies; edge ``e = {u, v}``
    becomes a pair ``a_e - b_e`` of weight ``w`` with ``a_e`` joined to both
    copies of ``u`` and ``b_e`` to both copies of ``v``, also at weight ``w``.
    A maximum matching either takes ``a_e - b_e`` (edge unused, gain ``w``)
    or matches both ends into vertex copies (edge used, gain ``2w``), so it
    weighs ``w(E) + w(A)`` for the best 2-matching ``A``.
    """
    if not g.edges:
        return TwoMatching(())
    h = nx.Graph()
    base = 2 * g.n
    for i, (u, v, w) in enumerate(g.edges):
        a, b = base + 2 * i, base + 2 * i + 1
        h.add_edge(a, b, weight=w)
        for c in (2 * (u - 1), 2 * (u - 1) + 1):
            h.add_edge(a, c, weight=w)
        for c in (2 * (v - 1), 2 * (v - 1) + 1):
            h.add_edge(b, c, weight=w)
    mate = {}
    for x, y in nx.max_weight_matching(h, maxcardinality=False, weight="weight"):
        mate[x] = y
        mate[y] = x
    chosen = []
    for i, e in enumerate(g.edges):
        a, b = base + 2 * i, base + 2 * i + 1
        if mate.get(a, base) < base and mate.get(b, base) < base:
            chosen.append(e)
    return TwoMatching(tuple(chosen))


def _components(a: TwoMatching):
    adj: dict[int, list] = {}
    for u, v, w in a.edges:
        adj.setdefault(u, []).append((v, w))
        adj.setdefault(v, []).append((u, w))
    seen = set()
    for s in sorted(adj):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        yield sorted(comp), adj


def _walk(start: int, adj, removed) -> list[int]:
    path, prev, x = [start], None, start
    while True:
        step = [y for y, _ in adj[x] if y != prev and (min(x, y), max(x, y)) != removed]
        if not step or step[0] == start:
            return path
        prev, x = x, step[0]
        path.append(x)


def _break(a: TwoMatching):
    paths, removed = [], []
    for comp, adj in _components(a):
        if any(len(adj[x]) > 2 for x in comp):
            raise InvariantViolation("2-matching has a vertex of degree > 2")
        ends = [x for x in comp if len(adj[x]) == 1]
        if ends:
            paths.append(tuple(_walk(min(ends), adj, None)))
            continue
        cyc = {(min(x, y), max(x, y), w) for x in comp for y, w in adj[x]}
        u, v, w = min(cyc, key=lambda e: (e[2], e[0], e[1]))
        removed.append((u, v, w))
        paths.append(tuple(_walk(u, adj, (u, v))))
    return paths, removed


def break_cycles(a: TwoMatching, g: Graph | None = None) -> list[tuple[int, ...]]:
    """Drop the lightest edge of every cycle and return the vertex paths.

    Ties on the lightest edge go to the lexicographically smallest endpoint
    pair. Each path is read from its smaller-id endpoint.
    """
    return _break(a)[0]


def path_weight(g: Graph, path) -> float:
    return sum(g.weight(x, y) for x, y in zip(path, path[1:]))


def concatenate(g: Graph, paths) -> Layout:
    """Heaviest path first (ties: smallest vertex id), uncovered vertices last."""
    ranked = sorted(paths, key=lambda p: (-path_weight(g, p), min(p)))
    order = [v for p in ranked for v in p]
    covered = set(order)
    order += [v for v in range(1, g.n + 1) if v not in covered]
    return Layout(tuple(order))


def cycle_cover_solve(g: Graph, f: DiscountFunction) -> SolveReport:
    t0 = time.perf_counter()
    a = max_weight_2matching(g)
    paths, removed = _break(a)
    layout = concatenate(g, paths)
    return report("cycle-cover", g, layout, f,
                  matching_weight=a.weight,
                  path_weight=sum(path_weight(g, p) for p in paths),
                  removed_weight=sum(w for _, _, w in removed), cycles=len(removed),
                  millis=(time.perf_counter() - t0) * 1000.0)
