import pytest
from hypothesis import given, strategies as st

from sl3lam import ends as E
from sl3lam.errors import InvalidKind
from sl3lam.lattices import W1, W2, Coweight, dynkin_star, reflect

multisets = st.builds(lambda c: E.EndMultiset(tuple(c)), st.lists(st.integers(0, 6), min_size=4, max_size=4))
words = st.lists(st.sampled_from((1, 2)), max_size=6)


def test_contributions_by_hand():
    assert E.theta(E.EndMultiset.of("i+")) == W2
    assert E.theta(E.EndMultiset.of("i-")) == -W1
    assert E.theta(E.EndMultiset.of("o+")) == W1
    assert E.theta(E.EndMultiset.of("o-")) == -W2
    assert E.theta(E.EndMultiset.of("o+", "o+", "i-")) == W1


def test_rewriting_by_hand():
    assert E.weyl_rewrite(1, E.OUT_PLUS) == E.EndMultiset.of("i+", "i-")
    assert E.weyl_rewrite(2, E.IN_PLUS) == E.EndMultiset.of("o+", "o-")
    assert E.weyl_rewrite(1, E.IN_PLUS) == E.EndMultiset.of("i+")


def test_r1_twice_on_out_plus():
    once = E.weyl_act(1, E.EndMultiset.of("o+"))
    assert once == E.EndMultiset.of("i+", "i-")
    raw = E.weyl_rewrite(1, E.IN_PLUS) + E.weyl_rewrite(1, E.IN_MINUS)
    assert raw == E.EndMultiset.of("i+", "o+", "o-")
    assert E.has_resolvable_pair(raw)
    assert E.normalize(raw) == E.EndMultiset.of("o+")


def test_braid_chain_ends_at_out_minus():
    op = E.EndMultiset.of("o+")
    assert E.weyl_word((1, 2, 1), op) == E.EndMultiset.of("o-")
    assert E.weyl_word((2, 1, 2), op) == E.EndMultiset.of("o-")
    # r2 on {i+, i-} gives {o+, o-, i-}; the pair {i-, o+} cancels
    assert E.weyl_word((2, 1), op) == E.EndMultiset.of("o-")
    assert E.weyl_word((1, 2), op) == E.EndMultiset.of("i+", "i-")


def test_exhaustive_count():
    assert len(list(E.all_multisets(4))) == 625


@given(multisets, st.sampled_from((1, 2)))
def test_theta_equivariance(m, s):
    assert E.theta(E.weyl_act(s, m)) == reflect(s, E.theta(m))


@given(multisets, st.sampled_from((1, 2)))
def test_involution_up_to_normalization(m, s):
    assert E.weyl_act(s, E.weyl_act(s, m)) == E.normalize(m)


@given(multisets)
def test_braid_and_dynkin(m):
    assert E.weyl_word((1, 2, 1), m) == E.weyl_word((2, 1, 2), m)
    assert E.dynkin(E.weyl_act(1, E.dynkin(m))) == E.weyl_act(2, m)
    assert E.theta(E.dynkin(m)) == dynkin_star(E.theta(m))


@given(multisets)
def test_normal_form(m):
    n = E.normalize(m)
    assert not E.has_resolvable_pair(n)
    assert E.theta(n) == E.theta(m)
    assert E.normalize(n) == n


@given(multisets, words)
def test_words_act_through_the_group_on_normal_forms(m, w):
    from sl3lam.lattices import normal_form
    n = E.normalize(m)
    assert E.weyl_word(w, n) == E.weyl_word(normal_form(w), n)


def test_tags():
    assert E.to_fp_tag("o+") == {1}
    assert E.to_fp_tag(E.LOOP_OUT) == {2}
    assert E.to_fp_tag("i-") == {2, 3}
    assert E.to_fp_tag(E.LOOP_IN) == {1, 3}
    assert E.kind_theta(E.LOOP_OUT) == W2 - W1
    assert E.kind_theta(E.LOOP_IN) == W1 - W2
    with pytest.raises(InvalidKind):
        E.to_fp_tag("sideways")
    with pytest.raises(InvalidKind):
        E.PrimitiveEnd.parse("x+")


def test_json():
    m = E.EndMultiset.of("o+", "o+", "i-")
    assert m.to_json() == [["i-", 1], ["o+", 2]]
    assert E.EndMultiset.from_json(m.to_json()) == m
    assert E.EndMultiset.from_json("o+, o+ i-") == m
