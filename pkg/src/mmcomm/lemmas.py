"""Brute-force checks of the structural claims behind the 3/4 guarantee.

All checks enumerate every split of OPT in the semi-robust model and group the
splits by Alice's message M, which fixes H = M u OPT and its components.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .decomposition import Component, decompose, path_stats
from .graph import GraphInstance, indices_of, mask_of
from .lp import lemma_mean_bound, lemma_prob_bound, opt_coeff, out_coeff
from .protocol import LFMM, SEMI_CAP, enumerate_semi_robust, semi_robust_outcomes

DELETION_EXHAUSTIVE = 12


@dataclass(frozen=True)
class ConditionalDistribution:
    """How many of a path's OPT edges Bob holds, conditioned on Alice's message.

    ``counts[j]`` is the number of supporting splits in which Bob holds exactly
    ``j`` of the ``k`` OPT edges on the path.
    """

    path: tuple[int, ...]
    k: int
    counts: tuple[int, ...]

    @property
    def support(self) -> int:
        return sum(self.counts)

    @property
    def p(self) -> tuple[Fraction, ...]:
        s = self.support
        return tuple(Fraction(c, s) for c in self.counts)

    def mean(self) -> Fraction:
        return sum((j * pj for j, pj in enumerate(self.p)), Fraction(0))


@dataclass
class Report:
    suite: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def check(self, ok: bool, msg) -> None:
        self.checked += 1
        if not ok:
            self.violations.append(msg() if callable(msg) else msg)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checked": self.checked,
                "violations": list(self.violations), "details": self.details}


def _groups(inst: GraphInstance, variant: str, cap: int):
    """``{message mask: [opt_b masks]}`` plus the split -> message map."""
    groups: dict[int, list[int]] = {}
    msg_of: dict[int, int] = {}
    for opt_b, msg, _ in semi_robust_outcomes(inst, variant, cap):
        groups.setdefault(msg, []).append(opt_b)
        msg_of[opt_b] = msg
    return groups, msg_of


def conditional_path_distribution(inst: GraphInstance, variant: str = LFMM, cap: int = SEMI_CAP
                                  ) -> list[tuple[frozenset, Component, ConditionalDistribution]]:
    groups, _ = _groups(inst, variant, cap)
    out = []
    for msg in sorted(groups):
        m_set = indices_of(msg)
        d = decompose(inst.edges, m_set, inst.opt, inst.sigma)
        for comp in d.augmenting_paths():
            pmask = mask_of(comp.opt_edges)
            counts = [0] * (comp.k + 1)
            for opt_b in groups[msg]:
                counts[bin(opt_b & pmask).count("1")] += 1
            out.append((m_set, comp, ConditionalDistribution(comp.edges, comp.k, tuple(counts))))
    return out


def check_distribution(dist: ConditionalDistribution, report: Report, where: str = "",
                       variant: str = LFMM) -> None:
    k, p = dist.k, dist.p
    tag = f"{where} path {dist.path} (k={k})"
    report.check(sum(p) == 1, lambda: f"{tag}: probabilities sum to {sum(p)}")
    if variant == LFMM:
        report.check(p[0] == 0, lambda: f"{tag}: Bob holds no OPT edge with probability {p[0]}")
        report.check(p[k] >= lemma_prob_bound(k),
                     lambda: f"{tag}: Pr[all k with Bob] = {p[k]} < {lemma_prob_bound(k)}")
        report.check(dist.mean() >= lemma_mean_bound(k),
                     lambda: f"{tag}: mean {dist.mean()} < {lemma_mean_bound(k)}")
        for j in range(1, k):
            report.check(p[j + 1] >= p[j] * Fraction(k - j, j + 1),
                         lambda j=j: f"{tag}: p_{j + 1} = {p[j + 1]} < p_{j} (k-j)/(j+1)")


def verify_main_lemma(inst: GraphInstance, cap: int = SEMI_CAP) -> Report:
    rep = Report("main-lemma")
    prob_margin = mean_margin = None
    for m_set, _, dist in conditional_path_distribution(inst, LFMM, cap):
        check_distribution(dist, rep, f"M={sorted(m_set)}")
        pm = dist.p[dist.k] - lemma_prob_bound(dist.k)
        mm = dist.mean() - lemma_mean_bound(dist.k)
        prob_margin = pm if prob_margin is None else min(prob_margin, pm)
        mean_margin = mm if mean_margin is None else min(mean_margin, mm)
    rep.details = {"min_prob_margin": None if prob_margin is None else str(prob_margin),
                   "min_mean_margin": None if mean_margin is None else str(mean_margin)}
    return rep


def verify_superset_closure(inst: GraphInstance, cap: int = SEMI_CAP) -> Report:
    """Handing Bob any Alice-held OPT edge of an augmenting path keeps M."""
    rep = Report("closure")
    groups, msg_of = _groups(inst, LFMM, cap)
    for msg, splits in groups.items():
        d = decompose(inst.edges, indices_of(msg), inst.opt, inst.sigma)
        for comp in d.augmenting_paths():
            for opt_b in splits:
                for e in comp.opt_edges:
                    b = 1 << e
                    if opt_b & b:
                        continue
                    moved = opt_b | b
                    rep.check(msg_of[moved] == msg,
                              lambda: f"moving edge {e} to Bob changes M from {sorted(indices_of(msg))} "
                                      f"to {sorted(indices_of(msg_of[moved]))}")
    return rep


def _message(inst, mask, variant):
    eng = inst.engine
    return eng.lfmm(mask, inst.sigma) if variant == LFMM else eng.lex_maximal(mask, inst.sigma)


def verify_deletion_stability(inst: GraphInstance, trials: int = 1000, seed: int = 0,
                              variant: str = LFMM) -> Report:
    """Deleting edges outside M never changes Alice's matching on the full graph.

    Exhaustive over every deletion set when at most ``DELETION_EXHAUSTIVE``
    edges lie outside M, otherwise ``trials`` random deletion sets.
    """
    rep = Report("deletion")
    eng = inst.engine
    full = eng.full
    msg = _message(inst, full, variant)
    others = [i for i in range(inst.m) if not msg >> i & 1]
    if len(others) <= DELETION_EXHAUSTIVE:
        subsets = (mask_of(c) for r in range(len(others) + 1) for c in itertools.combinations(others, r))
        rep.details["mode"] = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        subsets = (mask_of(i for i, bit in zip(others, rng.integers(0, 2, len(others))) if bit)
                   for _ in range(trials))
        rep.details["mode"] = "sampled"
    for f in subsets:
        got = _message(inst, full & ~f, variant)
        rep.check(got == msg, lambda: f"deleting {sorted(indices_of(f))} changes M to {sorted(indices_of(got))}")
    return rep


def verify_counting_identities(inst: GraphInstance, cap: int = SEMI_CAP, variant: str = LFMM) -> Report:
    rep = Report("counting")
    k = len(inst.opt)
    seen: dict[int, object] = {}
    for _, msg, _ in semi_robust_outcomes(inst, variant, cap):
        if msg in seen:
            continue
        st = seen[msg] = path_stats(decompose(inst.edges, indices_of(msg), inst.opt, inst.sigma))
        rep.check(st.opt_total() == k, lambda: f"M={sorted(indices_of(msg))}: sum i n_i = {st.opt_total()} != {k}")
    stats = enumerate_semi_robust(inst, variant, cap)
    add_expectation_checks(stats, rep, variant)
    return rep


def add_expectation_checks(stats, rep: Report, variant: str = LFMM) -> None:
    k = stats.opt_size
    en = stats.expected_n
    rep.check(stats.expected_opt_b == Fraction(k, 2), lambda: f"E|OPT_B| = {stats.expected_opt_b} != {k}/2")
    total = sum((i * x for i, x in enumerate(en, start=1)), Fraction(0))
    rep.check(total == k, lambda: f"sum i n_i = {total} != |OPT| = {k}")
    if variant != LFMM:
        return
    lhs = sum((opt_coeff(i) * x for i, x in enumerate(en, start=1) if i >= 2), Fraction(0))
    rep.check(lhs <= k, lambda: f"sum_(i>=2) i 2^i/(2^i-1) n_i = {lhs} > |OPT| = {k}")
    low = sum((out_coeff(i) * x for i, x in enumerate(en, start=1)), Fraction(0))
    rep.check(stats.expected_out >= low, lambda: f"E|OUT| = {stats.expected_out} below bound {low}")


SUITES = ("main-lemma", "closure", "deletion", "counting")


def verify(inst: GraphInstance, suite: str = "all", trials: int = 1000, seed: int = 0) -> list[Report]:
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name == "main-lemma":
            out.append(verify_main_lemma(inst))
        elif name == "closure":
            out.append(verify_superset_closure(inst))
        elif name == "deletion":
            out.append(verify_deletion_stability(inst, trials, seed))
        elif name == "counting":
            out.append(verify_counting_identities(inst))
        else:
            raise ValueError(f"unknown suite {name!r}")
    return out

