"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Conventions shared by every kernel:

* vertices are 0-based indices ``0..n-1``;
* ``pos[v]`` is the 0-based position of vertex ``v``;
* ``eu, ev, ew`` are the edge endpoint and weight arrays;
* ``table[d]`` is the discount at distance ``d`` for ``1 <= d <= k`` where
  ``k = len(table) - 1``; ``table[0]`` is never read.

Edge contributions are always accumulated left to right in edge order. The
numpy fallbacks vectorise across candidate layouts, never across edges, so
both backends produce bit-identical floats.
"""

from itertools import islice, permutations
from types import SimpleNamespace

import numpy as np

from ._accel import HAVE_NUMBA, USE_NUMBA, njit

# ---------------------------------------------------------------- loop kernels
# Written in the numba-compatible subset; the numba backend compiles these.


def _score_positions_loop(pos, eu, ev, ew, table):
    k = table.shape[0] - 1
    acc = 0.0
    for e in range(eu.shape[0]):
        d = pos[eu[e]] - pos[ev[e]]
        if d < 0:
            d = -d
        if d <= k:
            acc += table[d] * ew[e]
    return acc


def _score_orders_loop(orders, eu, ev, ew, table):
    count, n = orders.shape
    out = np.empty(count, dtype=np.float64)
    pos = np.empty(n, dtype=np.int64)
    k = table.shape[0] - 1
    for r in range(count):
        for i in range(n):
            pos[orders[r, i]] = i
        acc = 0.0
        for e in range(eu.shape[0]):
            d = pos[eu[e]] - pos[ev[e]]
            if d < 0:
                d = -d
            if d <= k:
                acc += table[d] * ew[e]
        out[r] = acc
    return out


def _next_permutation(a):
    n = a.shape[0]
    i = n - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    tmp = a[i]
    a[i] = a[j]
    a[j] = tmp
    lo = i + 1
    hi = n - 1
    while lo < hi:
        tmp = a[lo]
        a[lo] = a[hi]
        a[hi] = tmp
        lo += 1
        hi -= 1
    return True


def _brute_force_loop(n, eu, ev, ew, table, prune):
    perm = np.arange(n, dtype=np.int64)
    best_perm = perm.copy()
    pos = np.empty(n, dtype=np.int64)
    k = table.shape[0] - 1
    best = -1.0
    count = 0
    while True:
        if (not prune) or n < 2 or perm[0] < perm[n - 1]:
            count += 1
            for i in range(n):
                pos[perm[i]] = i
            acc = 0.0
            for e in range(eu.shape[0]):
                d = pos[eu[e]] - pos[ev[e]]
                if d < 0:
                    d = -d
                if d <= k:
                    acc += table[d] * ew[e]
            if acc > best:
                best = acc
                for i in range(n):
                    best_perm[i] = perm[i]
        if not _next_permutation_nb(perm):
            break
    return best_perm, best, count


def _best_append_move_loop(order, subsets, perms, eu, ev, ew, table):
    n = order.shape[0]
    n_sub, ell = subsets.shape
    n_perm = perms.shape[0]
    k = table.shape[0] - 1
    inset = np.zeros(n, dtype=np.bool_)
    pos = np.empty(n, dtype=np.int64)
    best = -1.0
    best_s = -1
    best_p = -1
    for s in range(n_sub):
        for j in range(n):
            inset[j] = False
        for j in range(ell):
            inset[subsets[s, j]] = True
        i = 0
        for t in range(n):
            v = order[t]
            if not inset[v]:
                pos[v] = i
                i += 1
        for p in range(n_perm):
            for j in range(ell):
                pos[subsets[s, perms[p, j]]] = n - ell + j
            acc = 0.0
            for e in range(eu.shape[0]):
                d = pos[eu[e]] - pos[ev[e]]
                if d < 0:
                    d = -d
                if d <= k:
                    acc += table[d] * ew[e]
            if acc > best:
                best = acc
                best_s = s
                best_p = p
    return best_s, best_p, best


if HAVE_NUMBA:
    _next_permutation_nb = njit(_next_permutation)
else:  # pragma: no cover
    _next_permutation_nb = _next_permutation

# ---------------------------------------------------------------- numpy path


def _accumulate(pos_rows, eu, ev, ew, table):
    """Score each row of a ``(count, n)`` position matrix."""
    k = table.shape[0] - 1
    d = np.abs(pos_rows[:, eu] - pos_rows[:, ev])
    inside = d <= k
    contrib = np.where(inside, table[np.where(inside, d, 0)] * ew, 0.0)
    acc = np.zeros(pos_rows.shape[0], dtype=np.float64)
    for e in range(eu.shape[0]):
        acc += contrib[:, e]
    return acc


def _positions_of(orders):
    count, n = orders.shape
    pos = np.empty_like(orders)
    pos[np.arange(count)[:, None], orders] = np.arange(n, dtype=orders.dtype)
    return pos


def _score_positions_numpy(pos, eu, ev, ew, table):
    return float(_accumulate(pos[None, :], eu, ev, ew, table)[0])


def _score_orders_numpy(orders, eu, ev, ew, table):
    if orders.shape[0] == 0:
        return np.empty(0, dtype=np.float64)
    return _accumulate(_positions_of(orders), eu, ev, ew, table)


_CHUNK = 20_000


def _brute_force_numpy(n, eu, ev, ew, table, prune):
    best = -1.0
    best_perm = np.arange(n, dtype=np.int64)
    count = 0
    stream = permutations(range(n))
    while True:
        block = list(islice(stream, _CHUNK))
        if not block:
            break
        orders = np.array(block, dtype=np.int64).reshape(len(block), n)
        if prune and n >= 2:
            orders = orders[orders[:, 0] < orders[:, -1]]
        if orders.shape[0] == 0:
            continue
        count += orders.shape[0]
        values = _score_orders_numpy(orders, eu, ev, ew, table)
        i = int(np.argmax(values))
        if values[i] > best:
            best = float(values[i])
            best_perm = orders[i].copy()
    return best_perm, best, count


def _best_append_move_numpy(order, subsets, perms, eu, ev, ew, table):
    n = order.shape[0]
    n_sub, ell = subsets.shape
    n_perm = perms.shape[0]
    rows = np.arange(n_perm)[:, None]
    tail = np.arange(n - ell, n, dtype=np.int64)
    best, best_s, best_p = -1.0, -1, -1
    for s in range(n_sub):
        subset = subsets[s]
        rest = order[~np.isin(order, subset)]
        base = np.empty(n, dtype=np.int64)
        base[rest] = np.arange(n - ell, dtype=np.int64)
        pos = np.repeat(base[None, :], n_perm, axis=0)
        pos[rows, subset[perms]] = tail
        values = _accumulate(pos, eu, ev, ew, table)
        p = int(np.argmax(values))
        if values[p] > best:
            best, best_s, best_p = float(values[p]), s, p
    return best_s, best_p, best


# ---------------------------------------------------------------- dispatch

numpy_backend = SimpleNamespace(
    name="numpy",
    score_positions=_score_positions_numpy,
    score_orders=_score_orders_numpy,
    brute_force=_brute_force_numpy,
    best_append_move=_best_append_move_numpy,
)

if HAVE_NUMBA:
    numba_backend = SimpleNamespace(
        name="numba",
        score_positions=njit(_score_positions_loop),
        score_orders=njit(_score_orders_loop),
        brute_force=njit(_brute_force_loop),
        best_append_move=njit(_best_append_move_loop),
    )
else:  # pragma: no cover
    numba_backend = None

BACKENDS = {"numpy": numpy_backend}
if numba_backend is not None:
    BACKENDS["numba"] = numba_backend

_active = numba_backend if USE_NUMBA else numpy_backend


def active_backend() -> str:
    return _active.name


def score_positions(pos, eu, ev, ew, table) -> float:
    return float(_active.score_positions(pos, eu, ev, ew, table))


def score_orders(orders, eu, ev, ew, table):
    return _active.score_orders(orders, eu, ev, ew, table)


def brute_force(n, eu, ev, ew, table, prune=True):
    """Best 0-based order over all permutations; first maximum in lexicographic order."""
    perm, value, count = _active.brute_force(n, eu, ev, ew, table, prune)
    return np.asarray(perm), float(value), int(count)


def best_append_move(order, subsets, perms, eu, ev, ew, table):
    """Best (subset row, permutation row, value) for the remove-and-append move."""
    s, p, value = _active.best_append_move(order, subsets, perms, eu, ev, ew, table)
    return int(s), int(p), float(value)
