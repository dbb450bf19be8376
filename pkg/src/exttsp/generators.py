"""Seeded instance generators.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014; increment
0x9E3779B97F4A7C15, mixing multipliers 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB). Bounded draws use rejection sampling so every value in
range is equally likely. Given the same parameters the generators return
identical instances on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Graph, InputError, Layout
from .tree_exact import RootedTree

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = ((1 << 64) // bound) * bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)


def _weights(weight_range):
    lo, hi = (int(x) for x in weight_range)
    if lo < 1 or hi < lo:
        raise InputError(f"weight range must satisfy 1 <= lo <= hi, got {weight_range}")
    return lo, hi


def gen_random_tree(n: int, seed: int = 0, weight_range=(1, 10)) -> RootedTree:
    """Vertex ``v >= 2`` attaches to a uniform parent in ``1..v-1``; rooted at 1."""
    if n < 1:
        raise InputError("a tree needs at least one vertex")
    lo, hi = _weights(weight_range)
    rng = SplitMix64(seed)
    edges = []
    for v in range(2, n + 1):
        p = 1 + rng.below(v - 1)
        edges.append((v, p, rng.randint(lo, hi)))
    return RootedTree.from_graph(Graph.from_edges(n, edges), root=1)


def gen_random_graph(n: int, m: int, seed: int = 0, weight_range=(1, 10)) -> Graph:
    """``m`` distinct edges chosen by a partial Fisher-Yates shuffle of all pairs."""
    if n < 0 or m < 0:
        raise InputError("n and m must be non-negative")
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    if m > len(pairs):
        raise InputError(f"m={m} exceeds n(n-1)/2 = {len(pairs)}")
    lo, hi = _weights(weight_range)
    rng = SplitMix64(seed)
    for i in range(m):
        j = i + rng.below(len(pairs) - i)
        pairs[i], pairs[j] = pairs[j], pairs[i]
    return Graph.from_edges(n, [(u, v, rng.randint(lo, hi)) for u, v in pairs[:m]])


@dataclass(frozen=True)
class TightInstance:
    """Star-path instance on which greedy realizes only ``ell - 1 + k`` edges."""

    k: int
    ell: int
    opt_value: int
    greedy_value: int
    opt_layout: Layout
    greedy_start: int
    greedy_preference: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "type": "greedy-tight",
            "k": self.k,
            "ell": self.ell,
            "opt_value": self.opt_value,
            "greedy_value": self.greedy_value,
            "opt_layout": list(self.opt_layout.order),
            "greedy_start": self.greedy_start,
            "greedy_preference": list(self.greedy_preference),
        }


def star_leaves(k: int, ell: int, i: int) -> list[int]:
    """Leaves of star ``i`` (1-based); centres are vertices ``1..ell``."""
    first = ell + (i - 1) * 2 * k + 1
    return list(range(first, first + 2 * k))


def gen_greedy_tight(k: int, ell: int) -> tuple[Graph, TightInstance]:
    """``ell`` stars with ``2k`` unit leaves each, centres joined in a path.

    The optimum lays the stars out one after another, ``k`` leaves on each
    side of the centre. Greedy started at centre 1 and preferring centres,
    then the last star's leaves, walks the centre path and strands all but
    ``k`` leaves.
    """
    if k < 1 or ell < 2:
        raise InputError("need k >= 1 and ell >= 2")
    n = (2 * k + 1) * ell
    edges = [(i, i + 1, 1) for i in range(1, ell)]
    for i in range(1, ell + 1):
        edges += [(i, leaf, 1) for leaf in star_leaves(k, ell, i)]
    g = Graph.from_edges(n, edges)
    opt = []
    for i in range(1, ell + 1):
        leaves = star_leaves(k, ell, i)
        opt += leaves[:k] + [i] + leaves[k:]
    preference = list(range(1, ell + 1))
    for i in range(ell, 0, -1):
        preference += star_leaves(k, ell, i)
    meta = TightInstance(k, ell, 2 * k * ell, ell - 1 + k, Layout(tuple(opt)), 1, tuple(preference))
    return g, meta
