from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from sl3lam.errors import InvalidTag
from sl3lam.lattices import (NORMAL_FORMS, W1, W2, ZERO, Coweight, Weight, act, dynkin_star,
                             fp_weight_vector, group_elements, is_antidominant, is_dominant,
                             normal_form, pairing, reflect, simple_coroot)

coweights = st.builds(Coweight, rationals, rationals)


def test_reflections_by_hand():
    assert reflect(1, W1) == Coweight(-1, 1)
    assert reflect(1, W2) == W2
    assert reflect(2, W2) == Coweight(1, -1)
    assert reflect(2, W1) == W1
    assert simple_coroot(1) == Coweight(2, -1)
    assert pairing(1, simple_coroot(1)) == 2


@given(coweights)
def test_reflections_are_involutions(lam):
    assert reflect(1, reflect(1, lam)) == lam
    assert reflect(2, reflect(2, lam)) == lam


@given(coweights)
def test_braid_relation(lam):
    assert act((1, 2, 1), lam) == act((2, 1, 2), lam)


@given(coweights)
def test_dynkin_star_conjugates_generators(lam):
    assert dynkin_star(dynkin_star(lam)) == lam
    assert dynkin_star(reflect(1, dynkin_star(lam))) == reflect(2, lam)


def test_weyl_group_has_six_elements():
    elements = group_elements()
    assert len(elements) == 6
    assert {normal_form(w) for w in elements} == set(NORMAL_FORMS)
    assert normal_form((1, 2, 1, 2, 1, 2)) == ()
    assert normal_form((2, 1, 2)) == (1, 2, 1)


def test_longest_element_is_minus_star():
    lam = Coweight(3, -5)
    assert act((1, 2, 1), lam) == -dynkin_star(lam)


def test_dominance():
    assert is_dominant(Coweight(0, 2)) and not is_dominant(Coweight(-1, 2))
    assert is_antidominant(Coweight(0, -1)) and is_antidominant(ZERO)


def test_weights_from_z3():
    assert Weight.from_z3((1, 0, 0)) == Weight(1, 0)
    assert Weight.from_z3((1, 1, 0)) == Weight(0, 1)
    assert Weight.from_z3((2, 2, 2)) == Weight(0, 0)
    assert Weight.from_z3(Weight(Fraction(1, 3), -2).to_z3()) == Weight(Fraction(1, 3), -2)


def test_fp_tags():
    assert fp_weight_vector({1}) == Weight(1, 0)
    assert fp_weight_vector({1, 2}) == Weight(0, 1)
    assert fp_weight_vector({2}) == Weight(-1, 1)
    for bad in (set(), {1, 2, 3}, {4}):
        with pytest.raises(InvalidTag):
            fp_weight_vector(bad)


def test_json():
    assert W2.to_json() == {"w1": "0", "w2": "1"}
    assert Coweight.from_json({"w1": "-1/2", "w2": "3"}) == Coweight(Fraction(-1, 2), 3)
