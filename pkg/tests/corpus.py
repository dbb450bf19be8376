"""Seeded instance corpora shared by the unit and acceptance tests."""

from exttsp.generators import SplitMix64, gen_random_graph, gen_random_tree


def random_graphs(count, n_min=3, n_max=8, m_max=18, seed0=1000):
    """``count`` graphs with n in [n_min, n_max] and min(1, n-1) <= m <= min(m_max, n(n-1)/2)."""
    out = []
    for seed in range(seed0, seed0 + count):
        rng = SplitMix64(seed)
        n = rng.randint(n_min, n_max)
        m = rng.randint(min(1, n - 1), min(m_max, n * (n - 1) // 2))
        out.append(gen_random_graph(n, m, seed, (1, 9)))
    return out


def random_trees(count, n_min=2, n_max=9, seed0=0):
    out = []
    for seed in range(seed0, seed0 + count):
        n = n_min + seed % (n_max - n_min + 1)
        out.append(gen_random_tree(n, seed, (1, 9)))
    return out
