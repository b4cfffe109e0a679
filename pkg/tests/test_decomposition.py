import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mmcomm.decomposition import AUGMENTING, EVEN_CYCLE, EVEN_PATH, ISOLATED, decompose, path_stats
from mmcomm.graph import all_maximum_matchings, is_matching

from conftest import P4_EDGES, P6_EDGES


def test_length_three_path():
    d = decompose(P4_EDGES, {1}, {0, 2})
    (c,) = d.components
    assert c.kind == AUGMENTING and c.length == 3 and c.tags == ("OPT", "M", "OPT")
    st_ = path_stats(d)
    assert st_.n(1) == 0 and st_.n(2) == 1


def test_m_equals_opt():
    d = decompose(P4_EDGES, {0, 2}, {0, 2})
    assert [c.kind for c in d.components] == [ISOLATED, ISOLATED]
    assert all(c.tags == ("both",) for c in d.components)
    assert path_stats(d).counts == (2,)


def test_length_five_path():
    d = decompose(P6_EDGES, {1, 3}, {0, 2, 4})
    (c,) = d.components
    assert c.kind == AUGMENTING and c.length == 5
    s = path_stats(d)
    assert s.n(3) == 1 and s.opt_total() == 3


def test_four_cycle():
    c4 = ((0, 1), (1, 2), (2, 3), (0, 3))
    d = decompose(c4, {1, 3}, {0, 2})
    (c,) = d.components
    assert c.kind == EVEN_CYCLE and c.length == 4 and c.vertices[0] == 0
    assert path_stats(d).counts == (2,)


def test_even_path_and_lone_opt_edge():
    edges = ((0, 1), (1, 2), (3, 4))
    d = decompose(edges, {1}, {0, 2})
    kinds = sorted(c.kind for c in d.components)
    assert kinds == [EVEN_PATH, ISOLATED]
    assert path_stats(d).counts == (2,)


def test_canonical_start_is_lower_ranked_endpoint():
    d = decompose(P4_EDGES, {1}, {0, 2}, sigma=(4, 1, 2, 3))
    assert d.components[0].vertices == (3, 2, 1, 0)


def test_rejects_non_matchings():
    with pytest.raises(ValueError, match="M is not a matching"):
        decompose(P4_EDGES, {0, 1}, {0, 2})
    with pytest.raises(ValueError, match="not maximum"):
        decompose(P4_EDGES, {0, 2}, {1})


@st.composite
def matching_pairs(draw):
    n = draw(st.integers(2, 8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = tuple(draw(st.lists(st.sampled_from(pairs), unique=True, min_size=1)))
    opt = draw(st.sampled_from(all_maximum_matchings(n, edges)))
    cand = draw(st.lists(st.integers(0, len(edges) - 1), unique=True))
    m = set()
    for i in cand:
        if is_matching(edges, m | {i}):
            m.add(i)
    return n, edges, m, opt


@settings(max_examples=300)
@given(matching_pairs())
def test_opt_identity_and_structure(case):
    n, edges, m, opt = case
    d = decompose(edges, m, opt)
    assert path_stats(d).opt_total() == len(opt)
    seen = [v for c in d.components for v in c.vertices]
    assert len(seen) == len(set(seen))
    for c in d.components:
        if c.kind == AUGMENTING:
            assert c.tags[0] == c.tags[-1] == "OPT"
            assert c.k == (c.length + 1) // 2
            assert all(c.tags[j] == ("OPT" if j % 2 == 0 else "M") for j in range(c.length))
