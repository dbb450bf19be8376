"""Graph, discount and layout model plus the Ext-TSP objective."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class InfeasibleError(RuntimeError):
    """A solver refused to run (size limit or compute budget exceeded)."""


class InvariantViolation(RuntimeError):
    """An internal structural invariant does not hold."""


Edge = tuple[int, int, float]


def _check_weight(w) -> float:
    w = float(w)
    if not w > 0 or not np.isfinite(w):
        raise InputError(f"edge weight must be positive and finite, got {w!r}")
    return w


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices ``1..n`` with positive edge weights.

    Edges are stored normalised as ``(u, v, w)`` with ``u < v``, sorted, one
    per unordered pair. Use :meth:`from_edges` to build one from raw input.
    """

    n: int
    edges: tuple[Edge, ...]
    eu: np.ndarray = field(init=False, repr=False, compare=False)
    ev: np.ndarray = field(init=False, repr=False, compare=False)
    ew: np.ndarray = field(init=False, repr=False, compare=False)
    adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InputError("vertex count must be non-negative")
        seen = set()
        for u, v, w in self.edges:
            if not (1 <= u < v <= self.n):
                raise InputError(f"edge ({u}, {v}) is not normalised for n={self.n}")
            if (u, v) in seen:
                raise InputError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            _check_weight(w)
        eu = np.array([u - 1 for u, _, _ in self.edges], dtype=np.int64)
        ev = np.array([v - 1 for _, v, _ in self.edges], dtype=np.int64)
        ew = np.array([w for _, _, w in self.edges], dtype=np.float64)
        adj = [[] for _ in range(self.n + 1)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        for arr in (eu, ev, ew):
            arr.setflags(write=False)
        object.__setattr__(self, "eu", eu)
        object.__setattr__(self, "ev", ev)
        object.__setattr__(self, "ew", ew)
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence]) -> "Graph":
        """Validate, orient and merge raw ``(u, v, w)`` triples.

        Repeated pairs are summed, matching the treatment of anti-parallel arcs.
        """
        n = int(n)
        total: dict[tuple[int, int], float] = defaultdict(float)
        for u, v, w in edges:
            u, v = int(u), int(v)
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError(f"edge ({u}, {v}) has a vertex outside 1..{n}")
            if u == v:
                raise InputError(f"self-loop on vertex {u}")
            total[(min(u, v), max(u, v))] += _check_weight(w)
        return cls(n, tuple((u, v, w) for (u, v), w in sorted(total.items())))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> float:
        return float(sum(w for _, _, w in self.edges))

    def weight(self, u: int, v: int) -> float:
        """Weight of edge ``{u, v}``, or 0.0 if absent."""
        for x, w in self.adj[u]:
            if x == v:
                return w
        return 0.0

    def neighbors(self, v: int):
        return self.adj[v]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v - 1]``."""
        return Graph.from_edges(self.n, [(perm[u - 1], perm[v - 1], w) for u, v, w in self.edges])


@dataclass(frozen=True)
class DiscountFunction:
    """Window ``k`` and table ``f(1..k)``; ``f(i) = 0`` for ``i > k``."""

    k: int
    table: tuple[float, ...]
    name: str = field(default="table", compare=False)
    array: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise InputError("window k must be at least 1")
        table = tuple(float(x) for x in self.table)
        if len(table) != self.k:
            raise InputError(f"discount table has {len(table)} values, expected k={self.k}")
        if table[0] != 1.0:
            raise InputError("discount must satisfy f(1) = 1")
        for i, x in enumerate(table):
            if not 0.0 <= x <= 1.0:
                raise InputError(f"f({i + 1}) = {x} is outside [0, 1]")
            if i and x > table[i - 1]:
                raise InputError(f"discount increases at distance {i + 1}")
        arr = np.zeros(self.k + 1, dtype=np.float64)
        arr[1:] = table
        arr.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "array", arr)

    def __call__(self, d: int) -> float:
        return self.table[d - 1] if 1 <= d <= self.k else 0.0


def make_discount(kind: str, k: int | None = None, values: Sequence[float] | None = None) -> DiscountFunction:
    """Build a discount preset.

    ``step``: f(i) = 1 for i <= k. ``linear``: f(1) = 1 and f(i) = max(0, 1 - i/k)
    for 2 <= i <= k, so f(k) = 0. ``table``: the given values.
    """
    if kind == "table":
        if values is None:
            raise InputError("table discount needs values")
        values = [float(x) for x in values]
        if k is not None and k != len(values):
            raise InputError(f"k={k} does not match table length {len(values)}")
        return DiscountFunction(len(values), tuple(values), name="table")
    if k is None or int(k) < 1:
        raise InputError("window k must be at least 1")
    k = int(k)
    if kind == "step":
        return DiscountFunction(k, (1.0,) * k, name="step")
    if kind == "linear":
        table = [1.0] + [max(0.0, 1.0 - i / k) for i in range(2, k + 1)]
        return DiscountFunction(k, tuple(table), name="linear")
    raise InputError(f"unknown discount kind {kind!r}")


@dataclass(frozen=True)
class Layout:
    """A vertex ordering; ``order[i]`` sits at position ``i + 1``."""

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(v) for v in self.order)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise InputError("layout is not a permutation of 1..n")
        object.__setattr__(self, "order", order)

    @classmethod
    def from_positions(cls, positions: Sequence[int]) -> "Layout":
        """``positions[v - 1]`` is the 1-based position of vertex ``v``."""
        order = [0] * len(positions)
        for v, p in enumerate(positions, start=1):
            if not 1 <= p <= len(positions):
                raise InputError(f"position {p} out of range")
            order[p - 1] = v
        return cls(tuple(order))

    @classmethod
    def identity(cls, n: int) -> "Layout":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def positions(self) -> tuple[int, ...]:
        pos = [0] * self.n
        for i, v in enumerate(self.order, start=1):
            pos[v - 1] = i
        return tuple(pos)

    def reversed(self) -> "Layout":
        return Layout(self.order[::-1])

    def zero_based(self) -> np.ndarray:
        """0-based position array indexed by 0-based vertex."""
        pos = np.empty(self.n, dtype=np.int64)
        pos[np.asarray(self.order, dtype=np.int64) - 1] = np.arange(self.n, dtype=np.int64)
        return pos


@dataclass
class SolveReport:
    algorithm: str
    layout: Layout
    value: float
    stats: dict = field(default_factory=dict)


def _check_layout(g: Graph, layout: Layout) -> None:
    if layout.n != g.n:
        raise InputError(f"layout has {layout.n} vertices, graph has {g.n}")


def score(g: Graph, layout: Layout, f: DiscountFunction) -> float:
    """Sum of ``f(|d_u - d_v|) * w(u, v)`` over all edges."""
    _check_layout(g, layout)
    if not g.edges:
        return 0.0
    return kernels.score_positions(layout.zero_based(), g.eu, g.ev, g.ew, f.array)


def realized_edges(g: Graph, layout: Layout, k: int) -> list[Edge]:
    """Edges whose endpoints sit at most ``k`` apart."""
    _check_layout(g, layout)
    pos = layout.positions
    return [(u, v, w) for u, v, w in g.edges if abs(pos[u - 1] - pos[v - 1]) <= k]


def merge_directed(n: int, arcs: Iterable[Sequence]) -> Graph:
    """Collapse directed arcs into an undirected graph by summing anti-parallel weights."""
    return Graph.from_edges(n, arcs)


def report(algorithm: str, g: Graph, layout: Layout, f: DiscountFunction, **stats) -> SolveReport:
    return SolveReport(algorithm, layout, score(g, layout, f), dict(stats))
