import itertools
import math
import random

import pytest

from exttsp.local_search import apply_move, local_search_solve, optimal_subsequence
from exttsp.model import Graph, InfeasibleError, InputError, Layout, make_discount, score
from exttsp.oracle import brute_force_opt

from .corpus import random_graphs


def test_single_edge_terminates_immediately():
    g = Graph.from_edges(2, [(1, 2, 4)])
    rep = local_search_solve(g, make_discount("step", 1), ell=2)
    assert rep.value == 4.0 and rep.stats["accepted_moves"] == 0


def test_subsequence_pair():
    g = Graph.from_edges(3, [(1, 2, 4), (2, 3, 1)])
    order, value = optimal_subsequence(g, {1, 2}, make_discount("step", 1))
    assert set(order) == {1, 2} and value == 4.0


def _internal(g, order, f):
    pos = {v: i for i, v in enumerate(order)}
    return sum(f(abs(pos[u] - pos[v])) * w for u, v, w in g.edges if u in pos and v in pos)


def test_subsequence_matches_enumeration():
    rng = random.Random(11)
    for g in random_graphs(40, n_min=5):
        f = make_discount("linear", 3)
        subset = rng.sample(range(1, g.n + 1), 4)
        order, value = optimal_subsequence(g, subset, f)
        best = max(_internal(g, p, f) for p in itertools.permutations(subset))
        assert value == pytest.approx(best, abs=1e-9)
        assert _internal(g, order, f) == pytest.approx(value, abs=1e-9)


def test_subsequence_whole_graph_is_optimum():
    for g in random_graphs(20, n_max=7):
        f = make_discount("step", 2)
        assert optimal_subsequence(g, range(1, g.n + 1), f)[1] == brute_force_opt(g, f)[1]


def test_subsequence_limit():
    g = Graph.from_edges(8, [])
    with pytest.raises(InfeasibleError):
        optimal_subsequence(g, range(1, 9), make_discount("step", 1))


def test_apply_move():
    assert apply_move((1, 2, 3, 4, 5), (4, 2)) == (1, 3, 5, 4, 2)


def test_local_optimum_beats_every_window():
    # No block move can still improve: every ell-window's own internal value
    # is at most the total gained by moving it (value with the window moved to
    # the end, minus the rest's value), checked over all ell-subsets.
    for g in random_graphs(25, n_max=7):
        k, ell = 1, 2
        f = make_discount("step", k)
        rep = local_search_solve(g, f, ell=ell)
        cur = rep.value
        for block in itertools.combinations(range(1, g.n + 1), ell):
            for p in itertools.permutations(block):
                assert score(g, Layout(apply_move(rep.layout.order, p)), f) <= cur + 1e-9


def test_move_bound_and_monotone():
    for g in random_graphs(30, n_min=4, n_max=7):
        f = make_discount("linear", 2)
        rep = local_search_solve(g, f, ell=4, delta=0.05, init=Layout.identity(g.n))
        s = rep.stats
        assert s["accepted_moves"] <= math.ceil(g.n / 0.05) == s["move_bound"]
        traj = s["trajectory"]
        assert all(b > a for a, b in zip(traj, traj[1:]))
        assert rep.value >= s["initial_value"]


def test_gain_threshold_respected():
    for g in random_graphs(30, n_min=4, n_max=7):
        f = make_discount("step", 2)
        rep = local_search_solve(g, f, ell=3, delta=0.5, init=Layout.identity(g.n))
        traj = rep.stats["trajectory"]
        for a, b in zip(traj, traj[1:]):
            assert b - a >= 0.5 / g.n * a


@pytest.mark.parametrize("ell,delta", [(1, 0.0), (9, 0.0), (3, -0.1)])
def test_bad_parameters(ell, delta):
    g = Graph.from_edges(8, [(1, 2, 1)])
    with pytest.raises(InputError):
        local_search_solve(g, make_discount("step", 2), ell=ell, delta=delta)


def test_ell_above_limit_refused():
    g = Graph.from_edges(9, [(1, 2, 1)])
    with pytest.raises(InfeasibleError):
        local_search_solve(g, make_discount("step", 2), ell=8)
