"""numba kernels for 2^|E| fully-robust enumeration and bulk sampling.

Everything works on edge bitmasks of one fixed graph. ``nu_table`` stores the
maximum matching size of every edge subset (int8), after which a
lexicographically-first maximum matching costs at most |E| table lookups.
"""

from __future__ import annotations

import os

import numpy as np

# explicit layer: the TBB probe warns on older TBB builds
os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")

from numba import njit, prange  # noqa: E402

LFMM = 0
MAXIMAL = 1

TABLE_CAP = 28


@njit(cache=True)
def nu_table(m, conflict):
    size = np.int64(1) << m
    t = np.zeros(size, dtype=np.int8)
    for h in range(m):
        base = np.int64(1) << h
        drop = ~conflict[h]
        for r in range(base):
            a = t[r]
            b = t[r & drop] + 1
            t[base | r] = a if a >= b else b
    return t


@njit(cache=True)
def alice_message(a, order, conflict, table, variant):
    chosen = np.int64(0)
    avail = a
    if variant == MAXIMAL:
        for t in range(order.shape[0]):
            e = order[t]
            b = np.int64(1) << e
            if avail & b:
                chosen |= b
                avail &= ~conflict[e]
        return chosen
    need = table[a]
    for t in range(order.shape[0]):
        if need == 0:
            break
        e = order[t]
        b = np.int64(1) << e
        if avail & b:
            rest = avail & ~conflict[e]
            if table[rest] == need - 1:
                chosen |= b
                need -= 1
                avail = rest
    return chosen


@njit(cache=True, parallel=True)
def fully_robust_sums(m, order, conflict, table, matchings, variant, nchunks):
    """Sum of |OUT| over all Alice subsets and a histogram of Alice's messages.

    ``matchings`` is the sorted array of every matching of the graph; the
    histogram is indexed by position in it.
    """
    total = np.int64(1) << m
    full = total - 1
    chunk = (total + nchunks - 1) // nchunks
    outs = np.zeros(nchunks, dtype=np.int64)
    hist = np.zeros((nchunks, matchings.shape[0]), dtype=np.int64)
    for c in prange(nchunks):
        lo = c * chunk
        hi = min(total, lo + chunk)
        s = np.int64(0)
        for a in range(lo, hi):
            msg = alice_message(a, order, conflict, table, variant)
            s += table[(full ^ a) | msg]
            hist[c, np.searchsorted(matchings, msg)] += 1
        outs[c] = s
    return outs.sum(), hist.sum(axis=0)


@njit(cache=True, parallel=True)
def sampled_out_sizes(alice_masks, full, order, conflict, table, variant):
    out = np.empty(alice_masks.shape[0], dtype=np.int8)
    for j in prange(alice_masks.shape[0]):
        a = alice_masks[j]
        msg = alice_message(a, order, conflict, table, variant)
        out[j] = table[(full ^ a) | msg]
    return out


def all_matchings(n, edges):
    """Sorted int64 array of every matching (as an edge bitmask), empty included."""
    m = len(edges)
    conflict = [0] * m
    for i, (u, v) in enumerate(edges):
        for j, (x, y) in enumerate(edges):
            if {u, v} & {x, y}:
                conflict[i] |= 1 << j
    found = []

    def rec(start, mask, banned):
        found.append(mask)
        for e in range(start, m):
            if not banned >> e & 1:
                rec(e + 1, mask | 1 << e, banned | conflict[e])

    rec(0, 0, 0)
    return np.array(sorted(found), dtype=np.int64)


def conflict_array(edges):
    touch = {}
    for i, (u, v) in enumerate(edges):
        touch[u] = touch.get(u, 0) | 1 << i
        touch[v] = touch.get(v, 0) | 1 << i
    return np.array([touch[u] | touch[v] for u, v in edges], dtype=np.int64)
