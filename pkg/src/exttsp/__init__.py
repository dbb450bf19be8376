"""Ext-TSP vertex sequencing.

Order the vertices of a weighted graph to maximise the total weight of edges
whose endpoints land close together, discounted by distance.
"""

__version__ = "0.1.0"

from .cycle_cover import TwoMatching, break_cycles, cycle_cover_solve, max_weight_2matching
from .generators import gen_greedy_tight, gen_random_graph, gen_random_tree
from .greedy import greedy
from .local_search import local_search_solve, optimal_subsequence
from .model import (DiscountFunction, Graph, InfeasibleError, InputError, InvariantViolation, Layout,
                    SolveReport, make_discount, merge_directed, realized_edges, score)
from .oracle import brute_force_2matching, brute_force_opt
from .tree_exact import RootedTree, solve_tree, tree_opt

__all__ = [
    "DiscountFunction", "Graph", "InfeasibleError", "InputError", "InvariantViolation", "Layout",
    "RootedTree", "SolveReport", "TwoMatching", "break_cycles", "brute_force_2matching",
    "brute_force_opt", "cycle_cover_solve", "gen_greedy_tight", "gen_random_graph",
    "gen_random_tree", "greedy", "local_search_solve", "make_discount", "max_weight_2matching",
    "merge_directed", "optimal_subsequence", "realized_edges", "score", "solve_tree", "tree_opt",
]
