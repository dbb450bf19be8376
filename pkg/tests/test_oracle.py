import itertools
import math

import numpy as np
import pytest

from exttsp.model import Graph, InfeasibleError, Layout, make_discount, score
from exttsp.oracle import brute_force_2matching, brute_force_opt

from .corpus import random_graphs


def test_single_edge():
    g = Graph.from_edges(2, [(1, 2, 5)])
    assert brute_force_opt(g, make_discount("step", 1))[1] == 5.0


def test_star_k13_window_one():
    g = Graph.from_edges(4, [(1, 2, 1), (1, 3, 1), (1, 4, 1)])
    f = make_discount("step", 1)
    expected = max(score(g, Layout(p), f) for p in itertools.permutations(range(1, 5)))
    assert expected == 2.0
    layout, value = brute_force_opt(g, f)
    assert value == 2.0 and layout.order[1] == 1 or layout.order[2] == 1


def test_triangle_window_two():
    g = Graph.from_edges(3, [(1, 2, 1), (2, 3, 1), (1, 3, 1)])
    assert brute_force_opt(g, make_discount("step", 2))[1] == 3.0


def test_refuses_above_limit():
    g = Graph.from_edges(11, [(1, 2, 1)])
    with pytest.raises(InfeasibleError):
        brute_force_opt(g, make_discount("step", 1))
    assert brute_force_opt(Graph.from_edges(4, [(1, 2, 1)]), make_discount("step", 1), limit=4)[1] == 1.0


def test_value_is_score_of_layout():
    for g in random_graphs(30):
        f = make_discount("linear", 3)
        layout, value = brute_force_opt(g, f)
        assert value == score(g, layout, f)


@pytest.mark.parametrize("kind", ["step", "linear"])
def test_dominates_random_layouts(kind):
    rng = np.random.default_rng(7)
    for g in random_graphs(10):
        f = make_discount(kind, 2)
        _, value = brute_force_opt(g, f)
        for _ in range(1000):
            layout = Layout(tuple(int(x) + 1 for x in rng.permutation(g.n)))
            assert score(g, layout, f) <= value + 1e-12


def test_reversal_pruning_keeps_value():
    for g in random_graphs(40, n_max=7):
        for kind in ("step", "linear"):
            f = make_discount(kind, 2)
            assert brute_force_opt(g, f, prune_reversal=True)[1] == brute_force_opt(g, f, prune_reversal=False)[1]


# -- 2-matching oracle -------------------------------------------------------

def test_2matching_single_edge():
    g = Graph.from_edges(2, [(1, 2, 4)])
    assert brute_force_2matching(g) == [(1, 2, 4.0)]


def test_2matching_triangle():
    g = Graph.from_edges(3, [(1, 2, 1), (2, 3, 1), (1, 3, 1)])
    chosen = brute_force_2matching(g)
    assert len(chosen) == 3 and sum(w for *_, w in chosen) == 3


def test_2matching_star():
    g = Graph.from_edges(5, [(1, 2, 1), (1, 3, 2), (1, 4, 3), (1, 5, 4)])
    chosen = brute_force_2matching(g)
    assert sum(w for *_, w in chosen) == 7
    assert sorted(chosen) == [(1, 4, 3.0), (1, 5, 4.0)]


def test_2matching_refuses_above_limit():
    g = Graph.from_edges(8, [(u, v, 1) for u in range(1, 9) for v in range(u + 1, 9)])
    with pytest.raises(InfeasibleError):
        brute_force_2matching(g)


def _unpruned_best(g):
    best = 0.0
    for mask in itertools.product((0, 1), repeat=g.m):
        deg = [0] * (g.n + 1)
        weight = 0.0
        for bit, (u, v, w) in zip(mask, g.edges):
            if bit:
                deg[u] += 1
                deg[v] += 1
                weight += w
        if max(deg) <= 2:
            best = max(best, weight)
    return best


def test_2matching_matches_unpruned_enumeration():
    for g in random_graphs(60, m_max=12):
        chosen = brute_force_2matching(g)
        deg = [0] * (g.n + 1)
        for u, v, _ in chosen:
            deg[u] += 1
            deg[v] += 1
        assert max(deg) <= 2
        assert math.isclose(sum(w for *_, w in chosen), _unpruned_best(g))
