"""Graphs, lexicographic orders and exact matching engines.

Vertices are ``0..n-1``; an edge is a pair ``(u, v)`` and is referred to by its
0-based position in the instance's edge list. A vertex ordering ``sigma`` is a
tuple where ``sigma[v]`` is the rank (1..n) of vertex ``v``. Matchings are
frozensets of edge indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

Edge = tuple[int, int]
Matching = frozenset

ENUMERATION_CAP = 12


class InstanceError(ValueError):
    """Invalid graph instance (bad edge, non-matching OPT, bad ordering...)."""


def identity_order(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def edge_key(e: Edge, sigma: Sequence[int]) -> tuple[int, int]:
    """Rank pair ``(lo, hi)`` of an edge under ``sigma``."""
    a, b = sigma[e[0]], sigma[e[1]]
    return (a, b) if a < b else (b, a)


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


def edge_compare(e1: Edge, e2: Edge, sigma: Sequence[int]) -> int:
    """Three-way comparison of two edges: -1, 0 or 1."""
    return _cmp(edge_key(e1, sigma), edge_key(e2, sigma))


def matching_compare(m1: Iterable[Edge], m2: Iterable[Edge], sigma: Sequence[int]) -> int:
    """Three-way comparison of two equal-size matchings given as vertex pairs.

    Each matching is sorted by edge key and the sequences are compared
    lexicographically.
    """
    k1 = sorted(edge_key(e, sigma) for e in m1)
    k2 = sorted(edge_key(e, sigma) for e in m2)
    if len(k1) != len(k2):
        raise ValueError(f"matchings of different sizes ({len(k1)} vs {len(k2)}) are not ordered")
    return _cmp(k1, k2)


def sorted_edge_indices(edges: Sequence[Edge], sigma: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(range(len(edges)), key=lambda i: edge_key(edges[i], sigma)))


def is_matching(edges: Sequence[Edge], indices: Iterable[int]) -> bool:
    seen = set()
    for i in indices:
        u, v = edges[i]
        if u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def maximum_matching_size(n: int, edges: Iterable[Edge]) -> int:
    """Exact maximum matching size by DP over vertex subsets.

    For the lowest vertex ``v`` of a subset ``S``: either ``v`` stays
    unmatched or it is matched to a neighbour inside ``S``.
    """
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    memo = {0: 0}

    def best(s: int) -> int:
        r = memo.get(s)
        if r is not None:
            return r
        low = s & -s
        v = low.bit_length() - 1
        rest = s ^ low
        r = best(rest)
        nb = adj[v] & rest
        while nb:
            b = nb & -nb
            nb ^= b
            c = 1 + best(rest ^ b)
            if c > r:
                r = c
        memo[s] = r
        return r

    # vertices without edges never matter
    active = 0
    for a in range(n):
        if adj[a]:
            active |= 1 << a
    return best(active)


def all_maximum_matchings(n: int, edges: Sequence[Edge], cap: int = ENUMERATION_CAP) -> list[Matching]:
    """Every maximum matching, by brute force over edge combinations."""
    size = maximum_matching_size(n, edges)
    if size > cap:
        raise ValueError(f"maximum matching size {size} exceeds enumeration cap {cap}")
    out = []
    for combo in itertools.combinations(range(len(edges)), size):
        if is_matching(edges, combo):
            out.append(frozenset(combo))
    return out


class GraphEngine:
    """Memoized matching computations on edge subsets of one fixed graph.

    Subsets are bitmasks over edge indices. ``nu`` uses the recurrence on
    the lowest edge ``e``: skip it, or take it and drop every edge sharing
    an endpoint with it.
    """

    def __init__(self, n: int, edges: Sequence[Edge]):
        self.n = n
        self.edges = tuple(tuple(e) for e in edges)
        self.m = len(self.edges)
        self.full = (1 << self.m) - 1
        self.touch = [0] * n
        for i, (u, v) in enumerate(self.edges):
            self.touch[u] |= 1 << i
            self.touch[v] |= 1 << i
        self.conflict = [self.touch[u] | self.touch[v] for u, v in self.edges]
        self._nu = {0: 0}
        self._orders: dict[tuple[int, ...], tuple[int, ...]] = {}
        self._lfmm: dict[tuple[tuple[int, ...], int], int] = {}
        self._maximal: dict[tuple[tuple[int, ...], int], int] = {}

    def nu(self, mask: int) -> int:
        r = self._nu.get(mask)
        if r is None:
            low = mask & -mask
            e = low.bit_length() - 1
            r = self.nu(mask ^ low)
            if r < 1 + self.nu(mask & ~self.conflict[e]):
                r += 1
            self._nu[mask] = r
        return r

    def order(self, sigma: Sequence[int]) -> tuple[int, ...]:
        sigma = tuple(sigma)
        o = self._orders.get(sigma)
        if o is None:
            o = self._orders[sigma] = sorted_edge_indices(self.edges, sigma)
        return o

    def lfmm(self, mask: int, sigma: Sequence[int]) -> int:
        """Lexicographically-first maximum matching of ``mask`` (as a bitmask).

        Greedy with an extendability test: edge ``e`` joins the partial
        matching iff the graph with the chosen endpoints removed still has a
        matching completing it to maximum size.
        """
        order = self.order(sigma)
        key = (order, mask)
        r = self._lfmm.get(key)
        if r is not None:
            return r
        need = self.nu(mask)
        chosen = 0
        avail = mask
        for e in order:
            if not need:
                break
            b = 1 << e
            if not avail & b:
                continue
            rest = avail & ~self.conflict[e]
            if self.nu(rest) == need - 1:
                chosen |= b
                need -= 1
                avail = rest
        self._lfmm[key] = chosen
        return chosen

    def lex_maximal(self, mask: int, sigma: Sequence[int]) -> int:
        """Greedy maximal matching scanning edges in increasing order."""
        order = self.order(sigma)
        key = (order, mask)
        r = self._maximal.get(key)
        if r is not None:
            return r
        chosen = 0
        avail = mask
        for e in order:
            b = 1 << e
            if avail & b:
                chosen |= b
                avail &= ~self.conflict[e]
        self._maximal[key] = chosen
        return chosen

    def clear(self) -> None:
        self._nu = {0: 0}
        self._lfmm.clear()
        self._maximal.clear()


@lru_cache(maxsize=256)
def engine_for(n: int, edges: tuple[Edge, ...]) -> GraphEngine:
    return GraphEngine(n, edges)


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _subset_view(edges: Sequence[Edge]) -> tuple[tuple[Edge, ...], int]:
    es = tuple((min(u, v), max(u, v)) for u, v in edges)
    return es, (1 << len(es)) - 1


def lex_first_maximum_matching(n: int, edges: Sequence[Edge], sigma: Sequence[int]) -> Matching:
    es, full = _subset_view(edges)
    return indices_of(engine_for(n, es).lfmm(full, sigma))


def lex_first_maximal_matching(n: int, edges: Sequence[Edge], sigma: Sequence[int]) -> Matching:
    es, full = _subset_view(edges)
    return indices_of(engine_for(n, es).lex_maximal(full, sigma))


def brute_force_lfmm(n: int, edges: Sequence[Edge], sigma: Sequence[int]) -> Matching:
    """Minimum of all maximum matchings under the lexicographic order (oracle)."""
    cands = all_maximum_matchings(n, edges)
    return min(cands, key=lambda mm: sorted(edge_key(edges[i], sigma) for i in mm))


@dataclass(frozen=True)
class GraphInstance:
    """A graph with a designated maximum matching, adversary and ordering.

    ``adversary`` lists the non-OPT edges that go to Alice in the semi-robust
    model; every other non-OPT edge goes to Bob.
    """

    n: int
    edges: tuple[Edge, ...]
    opt: tuple[int, ...]
    adversary: tuple[int, ...] = ()
    sigma: tuple[int, ...] = field(default=())

    def __post_init__(self):
        edges = tuple(tuple(int(x) for x in e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "opt", tuple(sorted(int(i) for i in self.opt)))
        object.__setattr__(self, "adversary", tuple(sorted(int(i) for i in self.adversary)))
        if not self.sigma:
            object.__setattr__(self, "sigma", identity_order(self.n))
        else:
            object.__setattr__(self, "sigma", tuple(int(r) for r in self.sigma))
        self.validate()

    def validate(self) -> None:
        n, m = self.n, len(self.edges)
        if n < 0:
            raise InstanceError("vertex count must be non-negative")
        seen = set()
        for i, e in enumerate(self.edges):
            if len(e) != 2:
                raise InstanceError(f"edge {i} is not a vertex pair")
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise InstanceError(f"edge {i} = {e} has a vertex outside 0..{n - 1}")
            if u == v:
                raise InstanceError(f"edge {i} is a self-loop on vertex {u}")
            k = (min(u, v), max(u, v))
            if k in seen:
                raise InstanceError(f"edge {i} = {e} is a duplicate")
            seen.add(k)
        if sorted(self.sigma) != list(range(1, n + 1)):
            raise InstanceError(f"ordering {self.sigma} is not a bijection onto 1..{n}")
        if len(set(self.opt)) != len(self.opt):
            raise InstanceError("opt lists an edge twice")
        covered: dict[int, int] = {}
        for i in self.opt:
            if not 0 <= i < m:
                raise InstanceError(f"opt index {i} out of range")
            for x in self.edges[i]:
                if x in covered:
                    raise InstanceError(
                        f"opt is not a matching: edges {covered[x]} and {i} share vertex {x}")
                covered[x] = i
        for i in self.adversary:
            if not 0 <= i < m:
                raise InstanceError(f"adversary index {i} out of range")
            if i in covered.values():
                raise InstanceError(f"adversary edge {i} is an opt edge")
        if len(set(self.adversary)) != len(self.adversary):
            raise InstanceError("adversary lists an edge twice")
        size = maximum_matching_size(n, self.edges)
        if size != len(self.opt):
            raise InstanceError(f"opt has {len(self.opt)} edges but the maximum matching has {size}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def engine(self) -> GraphEngine:
        return engine_for(self.n, self.edges)

    @property
    def opt_mask(self) -> int:
        return mask_of(self.opt)

    @property
    def adversary_mask(self) -> int:
        return mask_of(self.adversary)

    @property
    def non_opt(self) -> tuple[int, ...]:
        o = set(self.opt)
        return tuple(i for i in range(self.m) if i not in o)

    def with_(self, **kw) -> "GraphInstance":
        d = dict(n=self.n, edges=self.edges, opt=self.opt, adversary=self.adversary, sigma=self.sigma)
        d.update(kw)
        return GraphInstance(**d)
