"""Components of the union of Alice's matching and OPT, and path counts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Edge, is_matching

ISOLATED = "isolated-edge"
EVEN_PATH = "even-path"
EVEN_CYCLE = "even-cycle"
AUGMENTING = "odd-augmenting-path"


@dataclass(frozen=True)
class Component:
    kind: str
    edges: tuple[int, ...]
    tags: tuple[str, ...]  # "M", "OPT" or "both" per edge
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def opt_edges(self) -> tuple[int, ...]:
        return tuple(e for e, t in zip(self.edges, self.tags) if t != "M")

    @property
    def k(self) -> int:
        """Number of OPT edges in the component."""
        return sum(t != "M" for t in self.tags)


@dataclass(frozen=True)
class Decomposition:
    components: tuple[Component, ...]

    def augmenting_paths(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if c.kind == AUGMENTING)


@dataclass(frozen=True)
class PathStats:
    """``counts[i - 1]`` is n_i; trailing zeros are dropped."""

    counts: tuple[int, ...]

    def n(self, i: int) -> int:
        return self.counts[i - 1] if 0 < i <= len(self.counts) else 0

    def opt_total(self) -> int:
        return sum(i * c for i, c in enumerate(self.counts, start=1))


def decompose(
    edges: Sequence[Edge],
    m_edges: Iterable[int],
    opt_edges: Iterable[int],
    sigma: Sequence[int] | None = None,
) -> Decomposition:
    """Split H = M u OPT into components and classify them.

    Edges in both matchings are single edges tagged ``"both"``. Paths are
    walked from their lower-ranked endpoint, cycles from their lowest-ranked
    vertex towards its lower-ranked neighbour.
    """
    m_set, opt_set = frozenset(m_edges), frozenset(opt_edges)
    for name, s in (("M", m_set), ("OPT", opt_set)):
        if not is_matching(edges, s):
            raise ValueError(f"{name} is not a matching")
    if sigma is None:
        n = 1 + max((max(e) for e in edges), default=-1)
        sigma = tuple(range(1, n + 1))

    def tag(i: int) -> str:
        if i in m_set and i in opt_set:
            return "both"
        return "M" if i in m_set else "OPT"

    adj: dict[int, list[int]] = {}
    for i in m_set | opt_set:
        for x in edges[i]:
            adj.setdefault(x, []).append(i)

    def other(i: int, x: int) -> int:
        u, v = edges[i]
        return v if x == u else u

    used: set[int] = set()
    comps = []

    def walk(start: int, first: int) -> tuple[list[int], list[int]]:
        vs, es = [start], []
        x, e = start, first
        while e is not None and e not in used:
            used.add(e)
            es.append(e)
            x = other(e, x)
            vs.append(x)
            e = next((f for f in adj[x] if f not in used), None)
        return vs, es

    ends = sorted((x for x, inc in adj.items() if len(inc) == 1), key=lambda x: sigma[x])
    for x in ends:
        if adj[x][0] in used:
            continue
        vs, es = walk(x, adj[x][0])
        comps.append((vs, es, False))
    rest = sorted((x for x in adj if any(e not in used for e in adj[x])), key=lambda x: sigma[x])
    for x in rest:
        if all(e in used for e in adj[x]):
            continue
        first = min(adj[x], key=lambda e: sigma[other(e, x)])
        vs, es = walk(x, first)
        comps.append((vs[:-1], es, True))

    out = []
    for vs, es, cyc in comps:
        tags = tuple(tag(e) for e in es)
        if cyc:
            kind = EVEN_CYCLE
        elif len(es) == 1:
            if tags[0] == "M":
                raise ValueError(f"edge {es[0]} of M is not adjacent to OPT: OPT is not maximum in M u OPT")
            kind = ISOLATED
        elif len(es) % 2 == 0:
            kind = EVEN_PATH
        elif tags[0] == "OPT":
            kind = AUGMENTING
        else:
            raise ValueError("M has an augmenting path against OPT: OPT is not maximum in M u OPT")
        out.append(Component(kind, tuple(es), tags, tuple(vs)))
    return Decomposition(tuple(out))


def path_stats(d: Decomposition) -> PathStats:
    counts: dict[int, int] = {}
    for c in d.components:
        if c.kind == AUGMENTING:
            i = (c.length + 1) // 2
            counts[i] = counts.get(i, 0) + 1
        else:
            counts[1] = counts.get(1, 0) + c.k
    top = max((i for i, v in counts.items() if v), default=0)
    return PathStats(tuple(counts.get(i, 0) for i in range(1, top + 1)))
