"""Small-graph catalogs and random instances for exhaustive checks."""

from __future__ import annotations

import itertools
from typing import Iterator

import networkx as nx
import numpy as np

from .graph import Edge, GraphInstance, all_maximum_matchings


def connected_graphs(max_n: int, min_n: int = 2) -> list[tuple[int, tuple[Edge, ...]]]:
    """Every connected graph with ``min_n..max_n`` vertices, up to isomorphism."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if min_n <= n <= max_n and g.number_of_edges() and nx.is_connected(g):
            out.append((n, tuple(sorted(tuple(sorted(e)) for e in g.edges()))))
    return out


def all_orderings(n: int) -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(1, n + 1))


def instances_for(n: int, edges: tuple[Edge, ...], sigma: tuple[int, ...]) -> Iterator[GraphInstance]:
    """Every OPT designation crossed with every adversary assignment."""
    for opt in all_maximum_matchings(n, edges):
        free = [i for i in range(len(edges)) if i not in opt]
        for r in range(len(free) + 1):
            for adv in itertools.combinations(free, r):
                yield GraphInstance(n, edges, tuple(sorted(opt)), adv, sigma)


def random_connected_graph(rng: np.random.Generator, n: int) -> tuple[Edge, ...]:
    while True:
        p = rng.uniform(0.25, 0.9)
        edges = tuple(e for e in itertools.combinations(range(n), 2) if rng.random() < p)
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(edges)
        if edges and nx.is_connected(g):
            return edges


def random_instance(rng: np.random.Generator, n: int) -> GraphInstance:
    edges = random_connected_graph(rng, n)
    opts = all_maximum_matchings(n, edges)
    opt = opts[rng.integers(len(opts))]
    free = [i for i in range(len(edges)) if i not in opt]
    adv = tuple(e for e in free if rng.random() < 0.5)
    sigma = tuple(int(x) + 1 for x in rng.permutation(n))
    return GraphInstance(n, edges, tuple(sorted(opt)), adv, sigma)
