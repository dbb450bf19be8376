"""Exact n^O(k) solver for trees.

Subtrees are solved bottom-up. For a subtree root ``z`` the optimum lays out
the component ``C`` of realized edges containing ``z`` contiguously and
solves every dangling subtree (a child hanging off ``C`` by an unrealized
edge) on its own. Components smaller than ``k`` are enumerated directly.
Larger ones are found as a best path through a graph of window states
``(z, sigma, R)``: ``sigma`` is the last ``k`` vertices emitted and ``R`` the
realized tree edges touching them.

Entry ports are read off the components of ``T_z - sigma``: every ``sigma``
vertex adjacent to a component is an entry port for all of its vertices, and
the port is closed when the connecting edge is in ``R``. A vertex is
reachable when its component is entirely open.

Tree edges are identified by their child endpoint throughout.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import permutations

from .model import (DiscountFunction, Graph, InfeasibleError, InputError, InvariantViolation,
                    Layout, SolveReport, report)

DEFAULT_BUDGET = 10**10


class NotATreeError(InputError):
    pass


@dataclass(frozen=True)
class RootedTree:
    n: int
    root: int
    parent: tuple[int, ...]
    weight: tuple[float, ...]
    children: tuple[tuple[int, ...], ...]

    @classmethod
    def from_graph(cls, g: Graph, root: int = 1) -> "RootedTree":
        if g.n == 0:
            raise NotATreeError("empty graph")
        if g.m != g.n - 1:
            raise NotATreeError(f"a tree on {g.n} vertices has {g.n - 1} edges, got {g.m}")
        if not 1 <= root <= g.n:
            raise InputError(f"root {root} outside 1..{g.n}")
        parent = [0] * (g.n + 1)
        weight = [0.0] * (g.n + 1)
        children = [[] for _ in range(g.n + 1)]
        seen = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y, w in g.adj[x]:
                if y not in seen:
                    seen.add(y)
                    parent[y], weight[y] = x, w
                    children[x].append(y)
                    stack.append(y)
        if len(seen) != g.n:
            raise NotATreeError("graph is not connected")
        return cls(g.n, root, tuple(parent), tuple(weight), tuple(tuple(sorted(c)) for c in children))

    def to_graph(self) -> Graph:
        return Graph.from_edges(self.n, [(v, self.parent[v], self.weight[v])
                                         for v in range(1, self.n + 1) if v != self.root])

    def neighbors(self, v: int):
        if v == self.root:
            return self.children[v]
        return self.children[v] + (self.parent[v],)

    def subtree(self, z: int) -> list[int]:
        out, stack = [], [z]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return sorted(out)

    def post_order(self) -> list[int]:
        out, stack = [], [(self.root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                out.append(x)
                continue
            stack.append((x, True))
            for c in reversed(self.children[x]):
                stack.append((c, False))
        return out

    def edge_id(self, a: int, b: int) -> int:
        if self.parent[a] == b:
            return a
        if self.parent[b] == a:
            return b
        raise InvariantViolation(f"({a}, {b}) is not a tree edge")


@dataclass(frozen=True)
class TupleState:
    z: int
    sigma: tuple[int, ...]
    realized: tuple[int, ...]


@dataclass(frozen=True)
class SubtreeSolution:
    z: int
    value: float
    component: tuple[int, ...]
    dangling: tuple[int, ...]
    layout: tuple[int, ...] = field(repr=False)


@dataclass
class _Split:
    comp_of: dict
    members: list  # component index -> frozenset of vertices
    boundary: list  # component index -> tuple of (port, inner vertex, edge id)


class _RootSearch:
    """State graph for one subtree root ``z``."""

    def __init__(self, t: RootedTree, f: DiscountFunction, z: int, dangling_values):
        self.t, self.f, self.z = t, f, z
        self.k = f.k
        self.vertices = t.subtree(z)
        self.inside = set(self.vertices)
        self.values = dangling_values
        self._splits: dict[frozenset, _Split] = {}
        self.states_seen = 0
        self.transitions = 0

    def nbrs(self, v: int):
        if v == self.z:
            return self.t.children[v]
        return self.t.neighbors(v)

    def split(self, sigma) -> _Split:
        key = frozenset(sigma)
        hit = self._splits.get(key)
        if hit is not None:
            return hit
        comp_of, members, boundary = {}, [], []
        for s in self.vertices:
            if s in key or s in comp_of:
                continue
            idx = len(members)
            comp, ports, stack = [s], [], [s]
            comp_of[s] = idx
            while stack:
                x = stack.pop()
                for y in self.nbrs(x):
                    if y in key:
                        ports.append((y, x, self.t.edge_id(x, y)))
                    elif y not in comp_of:
                        comp_of[y] = idx
                        comp.append(y)
                        stack.append(y)
            members.append(frozenset(comp))
            boundary.append(tuple(sorted(ports)))
        hit = _Split(comp_of, members, boundary)
        self._splits[key] = hit
        return hit

    def status(self, sigma, realized) -> list[str] | None:
        """Per-component 'open'/'closed', or None when some component is mixed."""
        out = []
        for ports in self.split(sigma).boundary:
            closed = sum(1 for _, _, e in ports if e in realized)
            if closed == 0:
                out.append("open")
            elif closed == len(ports):
                out.append("closed")
            else:
                return None
        return out

    def is_valid(self, state: TupleState) -> bool:
        return self.status(state.sigma, set(state.realized)) is not None

    def reachable(self, sigma, realized) -> set[int]:
        sp = self.split(sigma)
        st = self.status(sigma, realized)
        if st is None:
            raise InvariantViolation("reachability asked of an invalid state")
        return {v for i, s in enumerate(st) if s == "open" for v in sp.members[i]}

    def check_state(self, s: TupleState) -> None:
        sigma, realized = s.sigma, set(s.realized)
        if s.z != self.z or len(sigma) != self.k or len(set(sigma)) != self.k:
            raise InvariantViolation(f"window must hold exactly {self.k} distinct vertices")
        if not set(sigma) <= self.inside:
            raise InvariantViolation("window leaves the subtree")
        for e in realized:
            if e == self.t.root or not (e in sigma or self.t.parent[e] in sigma):
                raise InvariantViolation(f"realized edge {e} does not touch the window")
        for x in sigma:
            if x != self.z and self.t.parent[x] in sigma and x not in realized:
                raise InvariantViolation(f"edge {x} lies inside the window but is not realized")
        if not self.is_valid(s):
            raise InvariantViolation("state has an entry-port conflict")

    # -- edges of the state graph ------------------------------------------

    def sources(self):
        """Every valid window with R = tree edges inside it."""
        f = self.f
        for sigma in permutations(self.vertices, self.k):
            where = {x: i for i, x in enumerate(sigma)}
            realized, weight = [], 0.0
            for x in sigma:
                p = self.t.parent[x]
                if x != self.z and p in where:
                    realized.append(x)
                    weight += f(abs(where[x] - where[p])) * self.t.weight[x]
            rset = set(realized)
            if self.status(sigma, rset) is None:
                continue
            yield TupleState(self.z, sigma, tuple(sorted(realized))), weight

    def successors(self, s: TupleState):
        """(next state, weight, dangling children of the dropped vertex)."""
        t, f, k = self.t, self.f, self.k
        sigma, realized = s.sigma, set(s.realized)
        sp = self.split(sigma)
        st = self.status(sigma, realized)
        u, rest = sigma[0], sigma[1:]
        rest_set = set(rest)
        kept = {e for e in realized if e in rest_set or t.parent[e] in rest_set}
        out = []
        for ci, state in enumerate(st):
            if state != "open":
                continue
            for v in sorted(sp.members[ci]):
                added, gain = [], 0.0
                for i, x in enumerate(sigma):
                    if t.parent[x] == v or t.parent[v] == x:
                        e = t.edge_id(v, x)
                        added.append(e)
                        gain += f(k - i) * t.weight[e]
                new_r = kept | set(added)
                both = realized | new_r
                if u != self.z and u not in both:
                    continue
                dangling, ok = [], True
                for c in t.children[u]:
                    if c in both:
                        continue
                    cc = sp.comp_of.get(c)
                    if cc is None or len(sp.boundary[cc]) != 1 or v in sp.members[cc]:
                        ok = False
                        break
                    dangling.append(c)
                if not ok:
                    continue
                nxt_sigma = rest + (v,)
                if self.status(nxt_sigma, new_r) is None:
                    continue
                gain += sum(self.values[c] for c in dangling)
                out.append((TupleState(self.z, nxt_sigma, tuple(sorted(new_r))), gain, tuple(dangling)))
        self.transitions += len(out)
        return out

    def sink(self, s: TupleState):
        """(weight, dangling children) if ``s`` may end the component, else None."""
        t = self.t
        sigma, realized = s.sigma, set(s.realized)
        sp = self.split(sigma)
        st = self.status(sigma, realized)
        dangling = []
        for x in sigma:
            for y in self.nbrs(x):
                if y in sp.comp_of and st[sp.comp_of[y]] == "open":
                    cc = sp.comp_of[y]
                    if t.parent[y] != x or len(sp.boundary[cc]) != 1:
                        return None
                    dangling.append(y)
        dangling.sort()
        return sum(self.values[c] for c in dangling), tuple(dangling)

    # -- searches ------------------------------------------------------------

    def small_components(self):
        """Best (value, ordering, dangling) over components of size < k (plus {z})."""
        t, f = self.t, self.f
        top = max(1, self.k - 1)
        seen = {frozenset([self.z])}
        frontier = [frozenset([self.z])]
        while frontier:
            grown = []
            for comp in frontier:
                if len(comp) >= top:
                    continue
                for x in comp:
                    for c in t.children[x]:
                        if c not in comp:
                            bigger = comp | {c}
                            if bigger not in seen:
                                seen.add(bigger)
                                grown.append(bigger)
            frontier = grown
        best = None
        for comp in sorted(seen, key=lambda c: (len(c), sorted(c))):
            dangling = tuple(sorted(c for x in comp for c in t.children[x] if c not in comp))
            hanging = sum(self.values[c] for c in dangling)
            inner = [x for x in comp if x != self.z and t.parent[x] in comp]
            for order in permutations(sorted(comp)):
                where = {x: i for i, x in enumerate(order)}
                value = hanging + sum(f(abs(where[x] - where[t.parent[x]])) * t.weight[x] for x in inner)
                if best is None or value > best[0]:
                    best = (value, order, dangling)
        return best

    def best_path(self):
        """Best (value, ordering, dangling) over components of size >= k, or None."""
        size = len(self.vertices)
        if size < self.k:
            return None
        layer = {}
        for s, w in self.sources():
            if s not in layer or w > layer[s][0]:
                layer[s] = (w, None)
        history = []
        best = None
        emitted = self.k
        while layer:
            history.append(layer)
            self.states_seen += len(layer)
            for s, (val, _) in layer.items():
                end = self.sink(s)
                if end is not None and (best is None or val + end[0] > best[0]):
                    best = (val + end[0], len(history) - 1, s, end[1])
            if emitted == size:
                break
            nxt = {}
            for s, (val, _) in layer.items():
                for s2, w, dangling in self.successors(s):
                    cand = val + w
                    cur = nxt.get(s2)
                    if cur is None or cand > cur[0]:
                        nxt[s2] = (cand, (s, dangling))
            layer = nxt
            emitted += 1
        if best is None:
            return None
        value, depth, s, dangling = best
        appended, hanging = [], list(dangling)
        while depth > 0:
            appended.append(s.sigma[-1])
            prev, dang = history[depth][s][1]
            hanging.extend(dang)
            s = prev
            depth -= 1
        order = s.sigma + tuple(reversed(appended))
        return value, order, tuple(sorted(hanging))


def estimate_work(n: int, k: int) -> int:
    return n ** (2 * k + 3)


def _search(t, f, z, values) -> _RootSearch:
    return _RootSearch(t, f, z, values)


def enumerate_small_components(t: RootedTree, z: int, f: DiscountFunction, dangling_values):
    """Best (value, ordering) over root components smaller than ``k``."""
    value, order, _ = _search(t, f, z, dangling_values).small_components()
    return value, order


def tuple_successors(s: TupleState, t: RootedTree, f: DiscountFunction, dangling_values):
    """Outgoing state-graph edges of ``s`` as (state, weight) pairs."""
    search = _search(t, f, s.z, dangling_values)
    search.check_state(s)
    return [(s2, w) for s2, w, _ in search.successors(s)]


def source_and_sink_edges(z: int, t: RootedTree, f: DiscountFunction, dangling_values):
    """Source edges as (state, weight) pairs, plus a sink test returning weight or None."""
    search = _search(t, f, z, dangling_values)
    sources = list(search.sources())

    def sink_weight(s: TupleState):
        search.check_state(s)
        end = search.sink(s)
        return None if end is None else end[0]

    return sources, sink_weight


def best_component_path(z: int, t: RootedTree, f: DiscountFunction, dangling_values):
    """Best (value, ordering) over root components of size at least ``k``, or None."""
    found = _search(t, f, z, dangling_values).best_path()
    return None if found is None else found[:2]


def solve_subtrees(t: RootedTree, f: DiscountFunction, budget: int = DEFAULT_BUDGET):
    """SubtreeSolution for every vertex, plus search counters."""
    work = estimate_work(t.n, f.k)
    if work > budget:
        raise InfeasibleError(f"tree-exact refused: n^(2k+3) = {t.n}^{2 * f.k + 3} ~ {work:.3g} "
                              f"exceeds budget {budget:.3g}")
    solutions: dict[int, SubtreeSolution] = {}
    values: dict[int, float] = {}
    states = transitions = 0
    for z in t.post_order():
        search = _RootSearch(t, f, z, values)
        best = search.small_components()
        path = search.best_path()
        if path is not None and path[0] > best[0]:
            best = path
        states += search.states_seen
        transitions += search.transitions
        value, order, dangling = best
        layout = list(order)
        for c in dangling:
            layout.extend(solutions[c].layout)
        solutions[z] = SubtreeSolution(z, value, tuple(order), tuple(dangling), tuple(layout))
        values[z] = value
    return solutions, {"states": states, "transitions": transitions}


def tree_opt(t: RootedTree, f: DiscountFunction, budget: int = DEFAULT_BUDGET) -> SolveReport:
    t0 = time.perf_counter()
    solutions, counters = solve_subtrees(t, f, budget)
    top = solutions[t.root]
    return report("tree-exact", t.to_graph(), Layout(top.layout), f, dp_value=top.value,
                  millis=(time.perf_counter() - t0) * 1000.0, **counters)


def solve_tree(g: Graph, f: DiscountFunction, root: int = 1, budget: int = DEFAULT_BUDGET) -> SolveReport:
    """:func:`tree_opt` on a :class:`Graph` that must be a tree."""
    return tree_opt(RootedTree.from_graph(g, root), f, budget)
