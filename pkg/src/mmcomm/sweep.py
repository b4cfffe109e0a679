"""Exhaustive and random sweeps running every lemma check on every instance."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .catalog import all_orderings, connected_graphs, instances_for, random_instance
from .graph import GraphInstance
from .instance_io import format_instance
from .lemmas import (
    verify_counting_identities, verify_deletion_stability, verify_main_lemma, verify_superset_closure,
)
from .protocol import enumerate_semi_robust, semi_robust_outcomes

THREE_QUARTERS = Fraction(3, 4)


@dataclass
class SweepSummary:
    instances: int = 0
    graph_orderings: int = 0
    min_factor: Fraction | None = None
    min_instance: GraphInstance | None = None
    checks: dict[str, int] = field(default_factory=dict)
    violations: dict[str, list[str]] = field(default_factory=dict)
    seconds: float = 0.0

    def count(self, name: str, checked: int, bad: list[str]) -> None:
        self.checks[name] = self.checks.get(name, 0) + checked
        lst = self.violations.setdefault(name, [])
        # keep reports small; the count is what matters
        lst.extend(bad[: max(0, 20 - len(lst))])
        if bad:
            self.checks[name + ":failed"] = self.checks.get(name + ":failed", 0) + len(bad)

    def failed(self, name: str) -> int:
        return self.checks.get(name + ":failed", 0)

    def to_dict(self) -> dict:
        return {
            "instances": self.instances, "graph_orderings": self.graph_orderings,
            "min_factor": None if self.min_factor is None else str(self.min_factor),
            "min_instance": None if self.min_instance is None else format_instance(self.min_instance),
            "checks": self.checks, "violations": {k: v for k, v in self.violations.items() if v},
        }


def check_instance(inst: GraphInstance, summary: SweepSummary) -> None:
    stats = enumerate_semi_robust(inst)
    f = stats.factor
    summary.instances += 1
    if summary.min_factor is None or f < summary.min_factor:
        summary.min_factor, summary.min_instance = f, inst
    summary.count("theorem", 1, [] if f >= THREE_QUARTERS else [f"factor {f}:\n{format_instance(inst)}"])
    bad = []
    k = len(inst.opt)
    for opt_b, msg, out in semi_robust_outcomes(inst):
        if out < bin(msg).count("1") or out < bin(opt_b).count("1") or out > k:
            bad.append(f"|OUT|={out} out of range for M={msg:b}, OPT_B={opt_b:b}")
    summary.count("out-bounds", 1, bad)
    for rep in (verify_main_lemma(inst), verify_counting_identities(inst), verify_superset_closure(inst)):
        summary.count(rep.suite, rep.checked, rep.violations)


def run_sweep(max_n: int = 5, random_count: int = 1000, random_ns=(6, 7), seed: int = 2024,
              deletion: bool = True, progress=None) -> SweepSummary:
    """Every connected graph up to ``max_n`` vertices x every ordering x every
    OPT x every adversary, plus ``random_count`` random larger instances."""
    t0 = time.monotonic()
    s = SweepSummary()
    for gi, (n, edges) in enumerate(connected_graphs(max_n)):
        for sigma in all_orderings(n):
            s.graph_orderings += 1
            first = None
            for inst in instances_for(n, edges, sigma):
                first = first or inst
                check_instance(inst, s)
            if deletion and first is not None:
                rep = verify_deletion_stability(first)
                s.count("deletion", rep.checked, rep.violations)
        inst_cache_clear(n, edges)
        if progress:
            progress(gi, n, edges, s)
    rng = np.random.default_rng(seed)
    for j in range(random_count):
        n = random_ns[j % len(random_ns)]
        inst = random_instance(rng, n)
        check_instance(inst, s)
        if deletion:
            rep = verify_deletion_stability(inst, trials=200, seed=seed + j)
            s.count("deletion", rep.checked, rep.violations)
        inst.engine.clear()
    s.seconds = time.monotonic() - t0
    return s


def inst_cache_clear(n, edges) -> None:
    from .graph import engine_for

    engine_for(n, edges).clear()
