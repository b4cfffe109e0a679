"""Running the one-way protocol and averaging it over random edge partitions.

Alice sends either her lexicographically-first maximum matching (``lfmm``) or
her lexicographically-first maximal matching (``maximal``); Bob outputs a
maximum matching of his edges plus the message. Only |OUT| is tracked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .decomposition import Decomposition, PathStats, decompose, path_stats
from .graph import GraphInstance, indices_of, mask_of

LFMM = "lfmm"
MAXIMAL = "maximal"
VARIANTS = (LFMM, MAXIMAL)
SEMI = "semi-robust"
FULL = "fully-robust"
MODELS = (SEMI, FULL)

SEMI_CAP = 24
FULL_CAP = 28
# above this many edges the fully-robust enumeration uses the numba kernel
PY_FULL_LIMIT = 14


class CapExceeded(ValueError):
    """Exact enumeration would exceed its configured size cap."""


@dataclass(frozen=True)
class Partition:
    """Owner of every edge: ``alice`` holds the listed indices, Bob the rest."""

    alice: frozenset[int]
    num_edges: int

    def __post_init__(self):
        object.__setattr__(self, "alice", frozenset(self.alice))
        if any(not 0 <= i < self.num_edges for i in self.alice):
            raise ValueError("partition references an unknown edge")

    @property
    def bob(self) -> frozenset[int]:
        return frozenset(range(self.num_edges)) - self.alice

    def owner(self, i: int) -> str:
        return "alice" if i in self.alice else "bob"

    @property
    def alice_mask(self) -> int:
        return mask_of(self.alice)

    @classmethod
    def semi_robust(cls, inst: GraphInstance, opt_to_alice: Iterable[int]) -> "Partition":
        opt_to_alice = set(opt_to_alice)
        if not opt_to_alice <= set(inst.opt):
            raise ValueError("only OPT edges are randomized in the semi-robust model")
        return cls(frozenset(inst.adversary) | opt_to_alice, inst.m)


@dataclass(frozen=True)
class ProtocolOutcome:
    m: frozenset[int]
    out_size: int
    decomposition: Decomposition
    stats: PathStats


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def message_mask(inst: GraphInstance, alice_mask: int, variant: str = LFMM) -> int:
    eng = inst.engine
    if variant == LFMM:
        return eng.lfmm(alice_mask, inst.sigma)
    _check_variant(variant)
    return eng.lex_maximal(alice_mask, inst.sigma)


def out_size(inst: GraphInstance, alice_mask: int, msg: int) -> int:
    eng = inst.engine
    return eng.nu((eng.full ^ alice_mask) | msg)


def run_protocol(inst: GraphInstance, part: Partition, variant: str = LFMM) -> ProtocolOutcome:
    _check_variant(variant)
    if part.num_edges != inst.m:
        raise ValueError("partition and instance disagree on the edge count")
    a = part.alice_mask
    msg = message_mask(inst, a, variant)
    d = decompose(inst.edges, indices_of(msg), inst.opt, inst.sigma)
    return ProtocolOutcome(indices_of(msg), out_size(inst, a, msg), d, path_stats(d))


def _frac(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator, "dec": format(float(x), ".12g")}


@dataclass(frozen=True)
class ExactStats:
    model: str
    variant: str
    opt_size: int
    expected_out: Fraction
    expected_opt_b: Fraction
    expected_n: tuple[Fraction, ...]  # expected_n[i - 1] is n_i
    partitions_enumerated: int

    @property
    def factor(self) -> Fraction:
        if self.opt_size == 0:
            return Fraction(1)
        return self.expected_out / self.opt_size

    def n(self, i: int) -> Fraction:
        return self.expected_n[i - 1] if 0 < i <= len(self.expected_n) else Fraction(0)

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "variant": self.variant,
            "opt_size": self.opt_size,
            "factor": _frac(self.factor),
            "expected_out": _frac(self.expected_out),
            "expected_opt_b": _frac(self.expected_opt_b),
            "expected_n": [_frac(x) for x in self.expected_n],
            "partitions_enumerated": self.partitions_enumerated,
        }


def _stats_from_sums(model, variant, inst, total, out_sum, optb_sum, n_sums) -> ExactStats:
    top = max((i for i, v in n_sums.items() if v), default=0)
    en = tuple(Fraction(n_sums.get(i, 0), total) for i in range(1, top + 1))
    return ExactStats(model, variant, len(inst.opt), Fraction(out_sum, total),
                      Fraction(optb_sum, total), en, total)


def semi_robust_outcomes(inst: GraphInstance, variant: str = LFMM, cap: int = SEMI_CAP) -> Iterator[tuple[int, int, int]]:
    """Yield ``(opt_b_mask, message_mask, out_size)`` for every OPT split."""
    _check_variant(variant)
    k = len(inst.opt)
    if k > cap:
        raise CapExceeded(f"|OPT| = {k} exceeds the semi-robust cap {cap}; use monte_carlo instead")
    opt_bits = [1 << i for i in inst.opt]
    adv = inst.adversary_mask
    opt_mask = inst.opt_mask
    for sub in range(1 << k):
        to_alice = 0
        for t in range(k):
            if sub >> t & 1:
                to_alice |= opt_bits[t]
        a = adv | to_alice
        msg = message_mask(inst, a, variant)
        yield opt_mask & ~to_alice, msg, out_size(inst, a, msg)


def _accumulate(inst, outcomes):
    stats_cache: dict[int, PathStats] = {}
    total = out_sum = optb_sum = 0
    n_sums: dict[int, int] = {}
    for opt_b, msg, out in outcomes:
        total += 1
        out_sum += out
        optb_sum += bin(opt_b).count("1")
        st = stats_cache.get(msg)
        if st is None:
            st = stats_cache[msg] = path_stats(decompose(inst.edges, indices_of(msg), inst.opt, inst.sigma))
        for i, c in enumerate(st.counts, start=1):
            n_sums[i] = n_sums.get(i, 0) + c
    return total, out_sum, optb_sum, n_sums


def enumerate_semi_robust(inst: GraphInstance, variant: str = LFMM, cap: int = SEMI_CAP) -> ExactStats:
    """Exact averages over all 2^|OPT| splits of OPT, non-OPT edges fixed."""
    sums = _accumulate(inst, semi_robust_outcomes(inst, variant, cap))
    return _stats_from_sums(SEMI, variant, inst, *sums)


def fully_robust_outcomes(inst: GraphInstance, variant: str = LFMM) -> Iterator[tuple[int, int, int]]:
    _check_variant(variant)
    full = inst.engine.full
    opt_mask = inst.opt_mask
    for a in range(full + 1):
        msg = message_mask(inst, a, variant)
        yield opt_mask & ~a, msg, out_size(inst, a, msg)


def enumerate_fully_robust(inst: GraphInstance, variant: str = LFMM, cap: int = FULL_CAP,
                           backend: str = "auto", nchunks: int = 64) -> ExactStats:
    """Exact averages over all 2^|E| Alice subsets.

    ``backend`` is ``"python"`` (memoized engine), ``"numba"`` (table kernel)
    or ``"auto"`` (numba above ``PY_FULL_LIMIT`` edges).
    """
    _check_variant(variant)
    if inst.m > cap:
        raise CapExceeded(f"|E| = {inst.m} exceeds the fully-robust cap {cap}")
    if backend == "auto":
        backend = "numba" if inst.m > PY_FULL_LIMIT else "python"
    if backend == "python":
        sums = _accumulate(inst, fully_robust_outcomes(inst, variant))
        return _stats_from_sums(FULL, variant, inst, *sums)
    if backend != "numba":
        raise ValueError(f"unknown backend {backend!r}")
    return _fully_robust_numba(inst, variant, nchunks)


@dataclass
class TableGraph:
    """numba-side view of one graph: conflict masks, nu table, matchings."""

    n: int
    edges: tuple
    conflict: np.ndarray = field(repr=False)
    table: np.ndarray = field(repr=False)
    matchings: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, n, edges) -> "TableGraph":
        from . import kernels

        edges = tuple(tuple(e) for e in edges)
        if len(edges) > kernels.TABLE_CAP:
            raise CapExceeded(f"|E| = {len(edges)} exceeds the table cap {kernels.TABLE_CAP}")
        conflict = kernels.conflict_array(edges) if edges else np.zeros(0, dtype=np.int64)
        table = kernels.nu_table(len(edges), conflict)
        return cls(n, edges, conflict, table, kernels.all_matchings(n, edges))

    def order(self, sigma) -> np.ndarray:
        from .graph import sorted_edge_indices

        return np.array(sorted_edge_indices(self.edges, sigma), dtype=np.int64)


def _variant_code(variant):
    from . import kernels

    return kernels.LFMM if variant == LFMM else kernels.MAXIMAL


def fully_robust_from_table(inst: GraphInstance, tg: TableGraph, variant: str = LFMM, nchunks: int = 64) -> ExactStats:
    from . import kernels

    m = inst.m
    out_sum, hist = kernels.fully_robust_sums(
        m, tg.order(inst.sigma), tg.conflict, tg.table, tg.matchings, _variant_code(variant), nchunks)
    total = 1 << m
    n_sums: dict[int, int] = {}
    for idx in np.nonzero(hist)[0]:
        st = path_stats(decompose(inst.edges, indices_of(int(tg.matchings[idx])), inst.opt, inst.sigma))
        cnt = int(hist[idx])
        for i, c in enumerate(st.counts, start=1):
            n_sums[i] = n_sums.get(i, 0) + c * cnt
    # every OPT edge is with Bob in exactly half of the subsets
    optb_sum = len(inst.opt) * (total // 2)
    return _stats_from_sums(FULL, variant, inst, total, int(out_sum), optb_sum, n_sums)


def _fully_robust_numba(inst, variant, nchunks):
    return fully_robust_from_table(inst, TableGraph.build(inst.n, inst.edges), variant, nchunks)


# ---------------------------------------------------------------- Monte Carlo

def sample_blocks(seed: int, start: int, count: int) -> np.ndarray:
    """Random words for samples ``start .. start+count-1``.

    Sample ``j`` owns Philox4x64 counter block ``j`` (four 64-bit words) under
    key ``seed``, so any split of the index range reproduces the same draws.
    """
    gen = np.random.Philox(key=seed & (2**64 - 1), counter=start)
    return gen.random_raw(4 * count).reshape(count, 4)


def sample_alice_masks(inst: GraphInstance, model: str, seed: int, start: int, count: int) -> list[int]:
    """Alice's edge set for each sample index; bit ``t`` of the block decides
    the ``t``-th randomized edge (OPT edges in order, or all edges)."""
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    rand_edges = list(inst.opt) if model == SEMI else list(range(inst.m))
    if len(rand_edges) > 256:
        raise ValueError("at most 256 randomized edges per sample")
    base = inst.adversary_mask if model == SEMI else 0
    blocks = sample_blocks(seed, start, count)
    out = []
    for row in blocks:
        bits = int(row[0]) | int(row[1]) << 64 | int(row[2]) << 128 | int(row[3]) << 192
        a = base
        for t, e in enumerate(rand_edges):
            if bits >> t & 1:
                a |= 1 << e
        out.append(a)
    return out


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    stderr: float
    samples: int
    seed: int
    model: str
    variant: str

    def to_dict(self) -> dict:
        return {
            "model": self.model, "variant": self.variant, "samples": self.samples, "seed": self.seed,
            "estimate": format(self.estimate, ".12g"), "stderr": format(self.stderr, ".12g"),
        }


def _summarize(outs, opt, samples, seed, model, variant) -> MonteCarloResult:
    ratios = np.asarray(outs, dtype=np.float64) / opt if opt else np.ones(samples)
    mean = float(ratios.mean())
    se = float(ratios.std(ddof=1) / math.sqrt(samples)) if samples > 1 else float("nan")
    return MonteCarloResult(mean, se, samples, seed, model, variant)


def monte_carlo(inst: GraphInstance, model: str, variant: str = LFMM, samples: int = 10_000,
                seed: int = 0, backend: str = "python") -> MonteCarloResult:
    """Sample mean and standard error of |OUT|/|OPT| over random partitions."""
    _check_variant(variant)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if backend == "numba":
        return monte_carlo_table(inst, TableGraph.build(inst.n, inst.edges), model, variant, samples, seed)
    masks = sample_alice_masks(inst, model, seed, 0, samples)
    outs = []
    for a in masks:
        msg = message_mask(inst, a, variant)
        outs.append(out_size(inst, a, msg))
    return _summarize(outs, len(inst.opt), samples, seed, model, variant)


def monte_carlo_table(inst: GraphInstance, tg: TableGraph, model: str, variant: str = LFMM,
                      samples: int = 10_000, seed: int = 0) -> MonteCarloResult:
    from . import kernels

    masks = np.array(sample_alice_masks(inst, model, seed, 0, samples), dtype=np.int64)
    outs = kernels.sampled_out_sizes(masks, np.int64((1 << inst.m) - 1), tg.order(inst.sigma),
                                     tg.conflict, tg.table, _variant_code(variant))
    return _summarize(outs, len(inst.opt), samples, seed, model, variant)
