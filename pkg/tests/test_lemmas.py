from fractions import Fraction

import numpy as np
import pytest

from mmcomm.catalog import random_instance
from mmcomm.graph import GraphInstance
from mmcomm.lemmas import (
    ConditionalDistribution, Report, check_distribution, conditional_path_distribution, verify,
    verify_counting_identities, verify_deletion_stability, verify_main_lemma, verify_superset_closure,
)
from mmcomm.lp import lemma_mean_bound, lemma_prob_bound

from conftest import P4_EDGES, P4_SIGMA


def test_tight_conditional_distribution(tight):
    (entry,) = conditional_path_distribution(tight)
    m, comp, dist = entry
    assert m == {1} and dist.k == 2
    assert dist.p == (0, Fraction(2, 3), Fraction(1, 3))
    assert dist.mean() == Fraction(4, 3) == lemma_mean_bound(2)


def test_lemma_bounds_small_k():
    assert lemma_prob_bound(2) == Fraction(1, 3)
    assert lemma_mean_bound(2) == Fraction(4, 3)
    assert lemma_prob_bound(3) == Fraction(1, 7)
    assert lemma_mean_bound(3) == Fraction(12, 7)


def test_point_mass_groups():
    # Bob holds every non-OPT edge, so Alice only ever sees OPT edges
    inst = GraphInstance(4, P4_EDGES, (0, 2), (), P4_SIGMA)
    assert conditional_path_distribution(inst) == []
    assert verify_main_lemma(inst).passed


def test_maximal_variant_allows_bob_empty(tight):
    entries = conditional_path_distribution(tight, "maximal")
    assert any(d.p[0] > 0 for _, _, d in entries)


def test_reports_on_tight(tight):
    reps = verify(tight)
    assert [r.suite for r in reps] == ["main-lemma", "closure", "deletion", "counting"]
    assert all(r.passed for r in reps)
    assert verify_main_lemma(tight).details["min_prob_margin"] == "0"


def test_closure_on_p6(p6):
    from mmcomm.search import worst_ordering_search

    worst = worst_ordering_search(p6).best
    rep = verify_superset_closure(worst)
    assert rep.passed and rep.checked > 0
    assert verify_main_lemma(worst).passed


def test_closure_trivial_when_only_opt():
    inst = GraphInstance(4, ((0, 1), (2, 3)), (0, 1))
    rep = verify_superset_closure(inst)
    assert rep.passed and rep.checked == 0


def test_deletion_examples():
    inst = GraphInstance(4, P4_EDGES, (0, 2), (), P4_SIGMA)
    rep = verify_deletion_stability(inst)
    assert rep.passed and rep.checked == 2 and rep.details["mode"] == "exhaustive"


def test_deletion_sampled_mode():
    import itertools

    edges = tuple(itertools.combinations(range(7), 2))
    inst = GraphInstance(7, edges, (0, 15, 20))
    rep = verify_deletion_stability(inst, trials=50, seed=3)
    assert rep.details["mode"] == "sampled" and rep.checked == 50 and rep.passed
    assert verify_deletion_stability(inst, trials=50, seed=3).to_dict() == rep.to_dict()


def test_counting_tight(tight):
    rep = verify_counting_identities(tight)
    assert rep.passed


def test_counting_m_equals_opt():
    inst = GraphInstance(4, ((0, 1), (2, 3)), (0, 1))
    assert verify_counting_identities(inst).passed


def test_check_distribution_flags_bad_data():
    rep = Report("x")
    check_distribution(ConditionalDistribution((0, 1, 2), 2, (1, 2, 0)), rep)
    text = " ".join(rep.violations)
    assert "no OPT edge" in text and "Pr[all k" in text and "p_2" in text


def test_random_instances_pass_everything():
    rng = np.random.default_rng(17)
    for j in range(40):
        inst = random_instance(rng, 5 + j % 3)
        for rep in verify(inst, trials=50, seed=j):
            assert rep.passed, rep.violations
