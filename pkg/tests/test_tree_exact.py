import pytest

from exttsp.cycle_cover import cycle_cover_solve
from exttsp.generators import gen_random_tree
from exttsp.greedy import greedy
from exttsp.local_search import local_search_solve
from exttsp.model import (Graph, InfeasibleError, InvariantViolation, Layout, make_discount,
                          realized_edges, score)
from exttsp.oracle import brute_force_opt
from exttsp.tree_exact import (NotATreeError, RootedTree, TupleState, best_component_path,
                               enumerate_small_components, solve_subtrees, solve_tree,
                               source_and_sink_edges, tree_opt, tuple_successors)

from .corpus import random_trees


def _tree(n, edges, root=1):
    return RootedTree.from_graph(Graph.from_edges(n, edges), root)


def _subtree_graph(t, z):
    """T_z relabelled to 1..|T_z| plus the label map, for oracle checks."""
    verts = t.subtree(z)
    idx = {v: i for i, v in enumerate(verts, start=1)}
    edges = [(idx[v], idx[t.parent[v]], t.weight[v]) for v in verts if v != z]
    return Graph.from_edges(len(verts), edges)


def _values(t, f):
    sols, _ = solve_subtrees(t, f)
    return {z: s.value for z, s in sols.items()}


PATH3 = _tree(3, [(1, 2, 2), (2, 3, 5)])


def test_single_vertex():
    t = RootedTree.from_graph(Graph.from_edges(1, []))
    assert tree_opt(t, make_discount("step", 2)).value == 0.0


@pytest.mark.parametrize("n", [2, 4, 5])
def test_path_within_window(n):
    g = Graph.from_edges(n, [(i, i + 1, i) for i in range(1, n)])
    assert solve_tree(g, make_discount("step", n - 1)).value == g.total_weight


def test_path_of_five_k2():
    g = Graph.from_edges(5, [(i, i + 1, 1) for i in range(1, 5)])
    t = RootedTree.from_graph(g)
    f = make_discount("step", 2)
    assert best_component_path(1, t, f, _values(t, f))[0] == 4.0


def test_not_a_tree():
    with pytest.raises(NotATreeError):
        solve_tree(Graph.from_edges(3, [(1, 2, 1), (2, 3, 1), (1, 3, 1)]), make_discount("step", 1))
    with pytest.raises(NotATreeError):
        solve_tree(Graph.from_edges(4, [(1, 2, 1), (2, 3, 1), (1, 3, 1)]), make_discount("step", 1))


def test_budget_refusal():
    t = gen_random_tree(10)
    with pytest.raises(InfeasibleError):
        tree_opt(t, make_discount("step", 3), budget=10**6)


# -- small components ---------------------------------------------------------

def test_small_components_k1_is_singleton():
    t = _tree(4, [(1, 2, 1), (1, 3, 1), (3, 4, 7)])
    f = make_discount("step", 1)
    values = _values(t, f)
    value, order = enumerate_small_components(t, 1, f, values)
    assert order == (1,)
    assert value == values[2] + values[3] == 7.0


def test_small_components_star_k2():
    t = _tree(4, [(1, 2, 1), (1, 3, 1), (1, 4, 1)])
    f = make_discount("step", 2)
    value, order = enumerate_small_components(t, 1, f, _values(t, f))
    # components smaller than k=2 are the singleton only
    assert order == (1,) and value == 0.0
    assert tree_opt(t, f).value == 3.0 == brute_force_opt(t.to_graph(), f)[1]


def test_small_components_path3_k3():
    f = make_discount("step", 3)
    value, order = enumerate_small_components(PATH3, 1, f, _values(PATH3, f))
    # {1, 2} alone is worth 2; the singleton plus the dangling 2-3 subtree is worth 5
    assert order == (1,) and value == 5.0
    assert tree_opt(PATH3, f).value == brute_force_opt(PATH3.to_graph(), f)[1] == 7.0


# -- tuple graph --------------------------------------------------------------

def test_successor_on_path():
    f = make_discount("step", 2)
    s = TupleState(1, (1, 2), (2,))
    out = tuple_successors(s, PATH3, f, _values(PATH3, f))
    assert out == [(TupleState(1, (2, 3), (2, 3)), 5.0)]


def test_successor_blocked_by_open_port():
    # 1-2, 2-3, 2-5, 3-4 rooted at 1. Dropping 2 leaves child 3 reachable
    # through 4 as well, so 3 cannot dangle and must be appended next.
    t = _tree(5, [(1, 2, 1), (2, 3, 1), (2, 5, 1), (3, 4, 1)])
    f = make_discount("step", 2)
    values = _values(t, f)
    s = TupleState(1, (2, 4), (2,))
    appended = [st.sigma[-1] for st, _ in tuple_successors(s, t, f, values)]
    assert appended == [3]
    with pytest.raises(InvariantViolation):
        tuple_successors(TupleState(1, (2, 4), (4,)), t, f, values)


def test_k1_successors_follow_parent_edges():
    t = _tree(4, [(1, 2, 1), (2, 3, 1), (2, 4, 1)])
    f = make_discount("step", 1)
    values = _values(t, f)
    out = tuple_successors(TupleState(1, (1,), ()), t, f, values)
    assert [(st.sigma, st.realized, w) for st, w in out] == [((2,), (2,), 1.0)]
    for st, _ in out:
        assert len(st.sigma) == 1


def test_sources():
    t = _tree(4, [(1, 2, 3), (2, 3, 4), (3, 4, 1)])
    f = make_discount("linear", 3)
    sources, _ = source_and_sink_edges(1, t, f, _values(t, f))
    by_sigma = {s.sigma: w for s, w in sources}
    assert by_sigma[(1, 2, 3)] == 7.0
    assert by_sigma[(2, 1, 3)] == pytest.approx(3 + 4 / 3)
    for s, w in sources:
        assert (w == 0.0) == (not s.realized)


def test_sink_weight_equals_hanging_subtrees():
    for seed in range(20):
        t = gen_random_tree(8, seed, (1, 9))
        f = make_discount("step", 2)
        values = _values(t, f)
        sources, sink_weight = source_and_sink_edges(t.root, t, f, values)
        for s, _ in sources:
            w = sink_weight(s)
            if w is None:
                continue
            sig = set(s.sigma)
            hanging = [c for v in sig for c in t.children[v] if c not in sig]
            assert w == sum(brute_force_opt(_subtree_graph(t, c), f)[1] for c in hanging)


# -- whole solver -------------------------------------------------------------

@pytest.mark.parametrize("kind", ["step", "linear"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_matches_oracle(kind, k):
    f = make_discount(kind, k)
    for t in random_trees(40, n_max=8, seed0=500):
        assert tree_opt(t, f).value == pytest.approx(brute_force_opt(t.to_graph(), f)[1], abs=1e-9)


def test_every_subtree_solution_is_consistent():
    for t in random_trees(30, n_min=4, n_max=9, seed0=900):
        f = make_discount("linear", 2)
        sols, counters = solve_subtrees(t, f)
        assert counters["states"] <= t.n ** (2 * f.k + 1)
        for z, sol in sols.items():
            sub = t.subtree(z)
            assert sorted(sol.layout) == sub
            assert z in sol.component and len(set(sol.component)) == len(sol.component)
            comp = set(sol.component)
            # the component is connected: every member but z has its parent inside
            assert all(t.parent[v] in comp for v in comp if v != z)
            # every dangling child hangs off the component
            assert all(t.parent[c] in comp and c not in comp for c in sol.dangling)
            idx = {v: i for i, v in enumerate(sub, start=1)}
            g = _subtree_graph(t, z)
            layout = Layout(tuple(idx[v] for v in sol.layout))
            assert score(g, layout, f) == pytest.approx(sol.value, abs=1e-9)
            inner = Graph.from_edges(len(sub), [e for e in g.edges if {e[0], e[1]} <= {idx[v] for v in comp}])
            realized = score(inner, layout, f) + sum(sols[c].value for c in sol.dangling)
            assert realized == pytest.approx(sol.value, abs=1e-9)
            assert len(realized_edges(g, layout, f.k)) >= len(comp) - 1


def test_dominates_other_solvers():
    for t in random_trees(25, n_min=4, n_max=8, seed0=1200):
        g = t.to_graph()
        for k in (1, 2):
            f = make_discount("linear", k)
            best = tree_opt(t, f).value
            others = [greedy(g, f).value, cycle_cover_solve(g, f).value]
            if 2 * k <= g.n:
                others.append(local_search_solve(g, f, ell=2 * k).value)
            assert all(best >= v - 1e-9 for v in others)
