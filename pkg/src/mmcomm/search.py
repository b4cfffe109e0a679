"""Worst-case search over vertex orderings, adversaries and small graphs.

Reported factors always come from exact enumeration; Monte Carlo is only used
to decide which candidates get enumerated.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .graph import Edge, GraphInstance, maximum_matching_size
from .instance_io import format_instance
from .protocol import (
    FULL, LFMM, MODELS, SEMI, VARIANTS, TableGraph, enumerate_fully_robust, enumerate_semi_robust,
    fully_robust_from_table, monte_carlo, monte_carlo_table,
)

FIVE_SIXTHS = Fraction(5, 6)


@dataclass
class SearchConfig:
    model: str = SEMI
    variant: str = LFMM
    # exhaustive when (#candidate orderings) * (partitions per ordering) fits
    exact_budget: int = 2**26
    ordering_samples: int = 2000  # orderings screened when not exhaustive
    screen_samples: int = 4000  # Monte Carlo partitions per screened candidate
    finalists: int = 8
    seed: int = 0
    time_limit: float | None = None  # seconds; exceeded -> incomplete report
    # hunt only
    families: tuple[str, ...] = ("complete", "complete-split", "threshold", "half-graph", "co-matching")
    n: int = 8
    symmetry: bool = True

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        for name in ("exact_budget", "ordering_samples", "screen_samples", "finalists"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        self.families = tuple(self.families)

    @classmethod
    def from_dict(cls, d: dict) -> "SearchConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)


@dataclass(frozen=True)
class Candidate:
    instance: GraphInstance
    factor: Fraction
    estimate: float | None = None
    stderr: float | None = None

    def to_dict(self) -> dict:
        d = {"sigma": list(self.instance.sigma), "adversary": list(self.instance.adversary),
             "factor": {"num": self.factor.numerator, "den": self.factor.denominator,
                        "dec": format(float(self.factor), ".12g")}}
        if self.estimate is not None:
            d["estimate"] = format(self.estimate, ".12g")
            d["stderr"] = format(self.stderr, ".12g")
        return d


@dataclass
class SearchReport:
    best: GraphInstance | None
    factor: Fraction | None
    model: str
    variant: str
    screened: int = 0
    verified: int = 0
    wall_time: float = 0.0
    complete: bool = True
    mode: str = "exhaustive"
    finalists: list[Candidate] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def beats_five_sixths(self) -> bool:
        return self.factor is not None and self.factor < FIVE_SIXTHS

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "model": self.model, "variant": self.variant, "mode": self.mode, "complete": self.complete,
            "screened": self.screened, "verified": self.verified,
            "factor": None if self.factor is None else {
                "num": self.factor.numerator, "den": self.factor.denominator,
                "dec": format(float(self.factor), ".12g")},
            "instance": None if self.best is None else format_instance(self.best),
            "finalists": [c.to_dict() for c in self.finalists],
            "notes": self.notes,
        }
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
        return d


def exact_factor(inst: GraphInstance, model: str, variant: str = LFMM) -> Fraction:
    if model == SEMI:
        return enumerate_semi_robust(inst, variant).factor
    return enumerate_fully_robust(inst, variant).factor


class _Evaluator:
    """Exact and sampled factors of one graph under many orderings/adversaries."""

    def __init__(self, inst: GraphInstance, model: str, variant: str):
        self.model, self.variant = model, variant
        self.table = None
        if model == FULL and inst.m > 14:
            self.table = TableGraph.build(inst.n, inst.edges)

    def cost(self, inst: GraphInstance) -> int:
        return 2 ** (len(inst.opt) if self.model == SEMI else inst.m)

    def exact(self, inst: GraphInstance) -> Fraction:
        if self.table is not None:
            return fully_robust_from_table(inst, self.table, self.variant).factor
        return exact_factor(inst, self.model, self.variant)

    def estimate(self, inst: GraphInstance, samples: int, seed: int):
        if self.table is not None:
            return monte_carlo_table(inst, self.table, self.model, self.variant, samples, seed)
        return monte_carlo(inst, self.model, self.variant, samples, seed)


def automorphisms(n: int, edges: Sequence[Edge]) -> list[tuple[int, ...]]:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    gm = nx.algorithms.isomorphism.GraphMatcher(g, g)
    return sorted(tuple(iso[v] for v in range(n)) for iso in gm.isomorphisms_iter())


def ordering_representatives(n: int, edges: Sequence[Edge], symmetry: bool = True) -> list[tuple[int, ...]]:
    """One ordering per orbit under the graph's automorphisms (all n! if off).

    Relabelling by an automorphism phi turns ordering sigma into
    ``sigma o phi``, an isomorphic instance with the same factor. Each orbit is
    represented by its lexicographically smallest member.
    """
    perms = itertools.permutations(range(1, n + 1))
    if not symmetry:
        return list(perms)
    auts = automorphisms(n, edges)
    if len(auts) == 1:
        return list(perms)
    seen: set[tuple[int, ...]] = set()
    reps = []
    for sigma in perms:
        if sigma in seen:
            continue
        reps.append(sigma)
        for phi in auts:
            seen.add(tuple(sigma[phi[v]] for v in range(n)))
    return reps


def _two_phase(ev: _Evaluator, cands: list[GraphInstance], cfg: SearchConfig, report: SearchReport,
               deadline: float | None) -> list[Candidate]:
    """Exact evaluation of everything if it fits the budget, else screen first."""
    total_cost = sum(ev.cost(c) for c in cands)
    if total_cost <= cfg.exact_budget:
        report.mode = "exhaustive"
        chosen = [(c, None) for c in cands]
    else:
        report.mode = "two-phase"
        scored = []
        for j, c in enumerate(cands):
            if deadline is not None and time.monotonic() > deadline:
                report.complete = False
                break
            r = ev.estimate(c, cfg.screen_samples, cfg.seed + j)
            scored.append((r.estimate, j, c, r))
            report.screened += 1
        scored.sort(key=lambda t: (t[0], t[1]))
        chosen = [(c, r) for _, _, c, r in scored[: cfg.finalists]]
    out = []
    for c, r in chosen:
        if deadline is not None and time.monotonic() > deadline:
            report.complete = False
            break
        f = ev.exact(c)
        report.verified += 1
        out.append(Candidate(c, f, None if r is None else r.estimate, None if r is None else r.stderr))
    return out


def _finish(report: SearchReport, results: list[Candidate], cfg: SearchConfig, t0: float) -> SearchReport:
    results.sort(key=lambda c: (c.factor, c.instance.sigma, c.instance.adversary))
    if results:
        report.best = results[0].instance
        report.factor = results[0].factor
    report.finalists = results[: cfg.finalists]
    report.wall_time = time.monotonic() - t0
    return report


def worst_ordering_search(inst: GraphInstance, model: str = SEMI, variant: str = LFMM,
                          config: SearchConfig | None = None) -> SearchReport:
    """Minimize the exact factor of ``inst`` over vertex orderings."""
    cfg = config or SearchConfig(model=model, variant=variant)
    t0 = time.monotonic()
    deadline = None if cfg.time_limit is None else t0 + cfg.time_limit
    report = SearchReport(None, None, model, variant)
    ev = _Evaluator(inst, model, variant)
    n = inst.n
    # in the semi-robust model automorphisms must also fix OPT and the adversary
    symmetric = cfg.symmetry and model == FULL
    if math.factorial(n) * ev.cost(inst) <= cfg.exact_budget:
        sigmas = ordering_representatives(n, inst.edges, symmetric)
    else:
        sigmas = ordering_representatives(n, inst.edges, symmetric)
        if len(sigmas) > cfg.ordering_samples:
            rng = np.random.default_rng(cfg.seed)
            pick = np.sort(rng.choice(len(sigmas), cfg.ordering_samples, replace=False))
            sigmas = [sigmas[i] for i in pick]
            report.notes["orderings_sampled"] = len(sigmas)
    cands = [inst.with_(sigma=s) for s in sigmas]
    report.screened = 0
    results = _two_phase(ev, cands, cfg, report, deadline)
    report.notes["orderings"] = len(cands)
    return _finish(report, results, cfg, t0)


def worst_adversary_search(inst: GraphInstance, variant: str = LFMM,
                           config: SearchConfig | None = None) -> SearchReport:
    """Minimize the exact semi-robust factor over Alice's share of non-OPT edges."""
    cfg = config or SearchConfig(model=SEMI, variant=variant)
    t0 = time.monotonic()
    deadline = None if cfg.time_limit is None else t0 + cfg.time_limit
    report = SearchReport(None, None, SEMI, variant)
    free = inst.non_opt
    if len(free) <= 20:
        advs: Iterable = (c for r in range(len(free) + 1) for c in itertools.combinations(free, r))
    else:
        rng = np.random.default_rng(cfg.seed)
        advs = (tuple(e for e, b in zip(free, rng.integers(0, 2, len(free))) if b)
                for _ in range(cfg.ordering_samples))
        report.notes["adversaries_sampled"] = cfg.ordering_samples
    ev = _Evaluator(inst, SEMI, variant)
    cands = [inst.with_(adversary=a) for a in advs]
    results = _two_phase(ev, cands, cfg, report, deadline)
    return _finish(report, results, cfg, t0)


# ---------------------------------------------------------------- hard instances

def _first_max_matching(n: int, edges: Sequence[Edge]) -> tuple[int, ...]:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    mm = nx.max_weight_matching(g, maxcardinality=True)
    idx = {frozenset(e): i for i, e in enumerate(edges)}
    return tuple(sorted(idx[frozenset(e)] for e in mm))


def threshold_graph(seq: str) -> tuple[int, tuple[Edge, ...]]:
    """Threshold graph from a creation string of 'i' (isolated) / 'd' (dominating)."""
    edges = []
    for v, c in enumerate(seq):
        if c == "d":
            edges += [(u, v) for u in range(v)]
    return len(seq), tuple(edges)


def family_graphs(name: str, n: int = 8) -> list[tuple[str, int, tuple[Edge, ...]]]:
    """Named dense graph families on ``n`` vertices as ``(label, n, edges)``."""
    out = []
    if name == "complete":
        out.append((f"K{n}", n, tuple(itertools.combinations(range(n), 2))))
    elif name == "complete-split":
        # clique on the first s vertices, joined to an independent set
        for s in range(1, n):
            edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if u < s]
            out.append((f"split-{s}", n, tuple(edges)))
    elif name == "threshold":
        for bits in itertools.product("id", repeat=n - 1):
            seq = "i" + "".join(bits)
            out.append((f"threshold-{seq}", *threshold_graph(seq)))
    elif name == "half-graph":
        h = n // 2
        for clique_left in (False, True):
            edges = [(i, h + j) for i in range(h) for j in range(h) if i <= j]
            if clique_left:
                edges += list(itertools.combinations(range(h), 2))
            out.append((f"half-graph{'+clique' if clique_left else ''}", n, tuple(sorted(edges))))
    elif name == "co-matching":
        # complete graph minus a matching of size r
        for r in range(1, n // 2 + 1):
            gone = {(2 * i, 2 * i + 1) for i in range(r)}
            edges = [e for e in itertools.combinations(range(n), 2) if e not in gone]
            out.append((f"K{n}-{r}K2", n, tuple(edges)))
    else:
        raise ValueError(f"unknown family {name!r}")
    return out


def _canonical_edges(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return nx.weisfeiler_lehman_graph_hash(g), g


def hard_instance_hunt(config: SearchConfig | None = None, graphs=None, progress=None) -> SearchReport:
    """Fully-robust lfmm hunt for instances with factor below 5/6.

    ``graphs`` overrides the family list with explicit ``(label, n, edges)``
    triples. Per graph, ordering orbit representatives are screened by Monte
    Carlo (or enumerated exactly when the budget allows) and the finalists
    are verified by full 2^|E| enumeration.
    """
    cfg = config or SearchConfig(model=FULL)
    t0 = time.monotonic()
    deadline = None if cfg.time_limit is None else t0 + cfg.time_limit
    report = SearchReport(None, None, FULL, cfg.variant, mode="two-phase")
    if graphs is None:
        graphs = []
        seen = []
        for fam in cfg.families:
            for label, n, edges in family_graphs(fam, cfg.n):
                if maximum_matching_size(n, edges) * 2 < n - 1 or len(edges) > 28:
                    continue
                h, g = _canonical_edges(n, edges)
                if any(h == h2 and nx.is_isomorphic(g, g2) for h2, g2 in seen):
                    continue
                seen.append((h, g))
                graphs.append((label, n, edges))
    all_results: list[Candidate] = []
    per_graph = {}
    for label, n, edges in graphs:
        if deadline is not None and time.monotonic() > deadline:
            report.complete = False
            break
        base = GraphInstance(n, edges, _first_max_matching(n, edges))
        ev = _Evaluator(base, FULL, cfg.variant)
        sigmas = ordering_representatives(n, edges, cfg.symmetry)
        if len(sigmas) > cfg.ordering_samples:
            rng = np.random.default_rng(cfg.seed)
            pick = np.sort(rng.choice(len(sigmas), cfg.ordering_samples, replace=False))
            sigmas = [sigmas[i] for i in pick]
        cands = [base.with_(sigma=s) for s in sigmas]
        sub = SearchReport(None, None, FULL, cfg.variant)
        res = _two_phase(ev, cands, cfg, sub, deadline)
        report.screened += sub.screened
        report.verified += sub.verified
        report.complete &= sub.complete
        if res:
            best = min(res, key=lambda c: (c.factor, c.instance.sigma))
            per_graph[label] = format(float(best.factor), ".12g")
            if progress:
                progress(label, best)
        all_results.extend(res)
    report.notes["per_graph_best"] = per_graph
    report.notes["graphs"] = len(per_graph)
    return _finish(report, all_results, cfg, t0)


def config_to_dict(cfg: SearchConfig) -> dict:
    d = asdict(cfg)
    d["families"] = list(d["families"])
    return d
