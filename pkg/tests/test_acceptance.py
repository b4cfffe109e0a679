"""Acceptance criteria 1-10, each printing one PASS/FAIL line."""

import random
import time
from fractions import Fraction

import numpy as np
import pytest

from mmcomm.catalog import random_instance
from mmcomm.instance_io import load_instance
from mmcomm.lp import build_lp, make_solution, reduce_solution, solve_lp
from mmcomm.protocol import FULL, SEMI, enumerate_fully_robust, enumerate_semi_robust, monte_carlo
from mmcomm.search import FIVE_SIXTHS, SearchConfig, hard_instance_hunt, worst_ordering_search
from mmcomm.sweep import run_sweep

from conftest import DATA

THREE_QUARTERS = Fraction(3, 4)


@pytest.fixture
def report(capsys):
    def emit(num, ok, detail, t0):
        with capsys.disabled():
            print(f"\nACCEPTANCE {num:2d} {'PASS' if ok else 'FAIL'}  {detail}  ({time.monotonic() - t0:.2f}s)")
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def sweep():
    return run_sweep(max_n=5, random_count=1000, random_ns=(6, 7), seed=2024)


def test_criterion_01_tight_four_path(report):
    t0 = time.monotonic()
    f = enumerate_semi_robust(load_instance(DATA / "tight_p4.graph"), "lfmm").factor
    report(1, f == THREE_QUARTERS and time.monotonic() - t0 < 1, f"lfmm factor {f}", t0)


def test_criterion_02_maximal_variant(report):
    t0 = time.monotonic()
    f = enumerate_semi_robust(load_instance(DATA / "tight_p4.graph"), "maximal").factor
    report(2, f == Fraction(5, 8) and time.monotonic() - t0 < 1, f"maximal factor {f}", t0)


def test_criterion_03_six_path_worst_ordering(report):
    t0 = time.monotonic()
    rep = worst_ordering_search(load_instance(DATA / "p6.graph"))
    ok = rep.factor == THREE_QUARTERS and rep.notes["orderings"] == 720 and time.monotonic() - t0 < 60
    report(3, ok, f"worst factor {rep.factor} at sigma={rep.best.sigma}", t0)


@pytest.mark.slow
def test_criterion_04_theorem_floor(report, sweep):
    t0 = time.monotonic() - sweep.seconds
    ok = (sweep.failed("theorem") == 0 and sweep.failed("out-bounds") == 0
          and sweep.min_factor >= THREE_QUARTERS and sweep.seconds < 1800)
    report(4, ok, f"{sweep.instances} instances ({sweep.graph_orderings} graph orderings), "
                  f"min factor {sweep.min_factor}, {sweep.failed('theorem')} violations", t0)


@pytest.mark.slow
def test_criterion_05_main_lemma(report, sweep):
    t0 = time.monotonic()
    n = sweep.checks.get("main-lemma", 0)
    ok = n > 0 and sweep.failed("main-lemma") == 0 and sweep.failed("closure") == 0
    report(5, ok, f"{n} main-lemma checks, {sweep.checks.get('closure', 0)} closure checks, "
                  f"{sweep.failed('main-lemma') + sweep.failed('closure')} violations", t0)


@pytest.mark.slow
def test_criterion_06_counting(report, sweep):
    t0 = time.monotonic()
    n = sweep.checks.get("counting", 0)
    report(6, n > 0 and sweep.failed("counting") == 0,
           f"{n} counting checks, {sweep.failed('counting')} violations", t0)


def test_criterion_07_lp(report):
    t0 = time.monotonic()
    ok = True
    for i_max in range(2, 13):
        sol = solve_lp(build_lp(i_max))
        ok &= sol.objective == THREE_QUARTERS and sol.m[:2] == (Fraction(1, 4), Fraction(3, 8))
    rng = random.Random(7)
    lps = {i: build_lp(i) for i in range(2, 13)}
    worse = 0
    for _ in range(10_000):
        lp = lps[rng.randint(2, 12)]
        m = _random_feasible(lp, rng)
        sol = make_solution(lp, m)
        red = reduce_solution(lp, sol)
        worse += red.objective > sol.objective or not lp.is_feasible(red.m)
    ok &= worse == 0 and time.monotonic() - t0 < 10
    report(7, ok, f"value 3/4 for i_max 2..12; {worse} of 10000 reductions increased the objective", t0)


def _random_feasible(lp, rng):
    raw = [Fraction(rng.randint(0, 30)) for _ in range(lp.i_max)]
    if not any(raw):
        raw[0] = Fraction(1)
    w = sum(i * x for i, x in enumerate(raw, start=1))
    m = [x / w for x in raw]
    lhs1, _ = lp.constraint_values(m)
    if lhs1 > 1:
        m = [x / lhs1 for x in m]
        m[0] += 1 - sum(i * x for i, x in enumerate(m, start=1))
    return m


@pytest.mark.slow
def test_criterion_08_deletion_stability(report, sweep):
    t0 = time.monotonic()
    n = sweep.checks.get("deletion", 0)
    report(8, n > 0 and sweep.failed("deletion") == 0,
           f"{n} deletion sets checked, {sweep.failed('deletion')} changed LFMM", t0)


def test_criterion_09_monte_carlo(report):
    t0 = time.monotonic()
    rng = np.random.default_rng(99)
    agree, total = 0, 0
    while total < 20:
        inst = random_instance(rng, int(rng.integers(5, 8)))
        if inst.m > 12:
            continue
        exact = float(enumerate_fully_robust(inst).factor)
        mc = monte_carlo(inst, FULL, samples=100_000, seed=total, backend="numba")
        agree += abs(mc.estimate - exact) <= 4 * mc.stderr or mc.estimate == exact
        total += 1
    ok = agree >= 19 and time.monotonic() - t0 < 300
    report(9, ok, f"{agree}/20 within 4 standard errors", t0)


@pytest.mark.stretch
def test_criterion_10_hard_instance(report):
    t0 = time.monotonic()
    inst = load_instance(DATA / "hard_fully_robust.graph")
    f_numba = enumerate_fully_robust(inst, backend="numba").factor
    f_py = enumerate_fully_robust(inst, backend="python").factor
    cfg = SearchConfig(model=FULL, ordering_samples=100, screen_samples=2000, finalists=2, seed=0)
    hunt = hard_instance_hunt(cfg, graphs=[("golden", inst.n, inst.edges)])
    ok = (inst.n == 8 and f_numba == f_py < FIVE_SIXTHS and hunt.beats_five_sixths
          and time.monotonic() - t0 < 1800)
    report(10, ok, f"golden witness factor {f_numba} ({float(f_numba):.6f}); "
                   f"fresh hunt found {float(hunt.factor):.6f}", t0)
