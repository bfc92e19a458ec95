from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import points, rationals, seeds
from sl3lam.errors import FlavorMismatch, FrozenMutation, IndexOutOfRange, InvalidPermutation
from sl3lam.exchange import (ExchangeSeed, Mutate, Permute, TropicalPoint, a_mutation, apply_path,
                             apply_path_rows, as_rational, embed_rows, first_difference,
                             invert_path, mutate_matrix, mutate_x_tropical, orthant_rows,
                             orthant_samples, path_from_json, path_to_json, permute_seed,
                             random_rationals, seed_after, vectors_to_rows, x_mutation)
from sl3lam.maps import ensemble_rows

A2 = ExchangeSeed.from_eps([[0, 1], [-1, 0]])


def test_a2_matrix_mutation_flips_the_arrow():
    assert mutate_matrix(A2, 0) == ExchangeSeed.from_eps([[0, -1], [1, 0]])


def test_a3_mutation_at_middle_creates_the_shortcut():
    # 0 -> 1 -> 2, mutate at 1: arrows reverse and 0 -> 2 appears
    seed = ExchangeSeed.from_arrows(3, [(0, 1), (1, 2)])
    out = mutate_matrix(seed, 1)
    assert out == ExchangeSeed.from_arrows(3, [(1, 0), (2, 1), (0, 2)])


def test_half_weights_only_between_frozen_vertices():
    ExchangeSeed.from_eps([[0, Fraction(1, 2)], [Fraction(-1, 2), 0]], frozen={0, 1})
    with pytest.raises(ValueError):
        ExchangeSeed.from_eps([[0, Fraction(1, 2)], [Fraction(-1, 2), 0]], frozen={0})


def test_rejects_non_skew_matrix():
    with pytest.raises(ValueError):
        ExchangeSeed([[0, 2], [2, 0]], frozenset())


def test_frozen_and_out_of_range_mutation_rejected():
    seed = ExchangeSeed.from_eps([[0, 1], [-1, 0]], frozen={1})
    with pytest.raises(FrozenMutation):
        mutate_matrix(seed, 1)
    with pytest.raises(IndexOutOfRange):
        mutate_matrix(seed, 5)


def test_floats_are_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("3/6") == Fraction(1, 2)


def test_x_mutation_oracle_on_a2():
    # x' = (-x0, x1 - ε_10 [x0]_+ ...) with ε_10 = -1
    rows = [Fraction(2), Fraction(5)]
    assert x_mutation(rows, A2, 0) == [-2, 5 + 2]
    assert x_mutation([Fraction(-3), Fraction(5)], A2, 0) == [3, 5]


def test_a_mutation_oracle_on_a2():
    # a0' = -a0 + max(a1, 0)
    assert a_mutation([Fraction(1), Fraction(4)], A2, 0) == [3, 4]
    assert a_mutation([Fraction(1), Fraction(-4)], A2, 0) == [-1, -4]


def test_a2_pentagon_returns_with_a_transposition():
    path = [Mutate(0), Mutate(1), Mutate(0), Mutate(1), Mutate(0)]
    seed = seed_after(A2, path)
    assert seed == permute_seed(A2, (1, 0))
    p = TropicalPoint("X", ("3/2", "-7"))
    q, _ = apply_path(p, A2, path + [Permute((1, 0))])
    assert q == p


@given(seeds(), st.data())
def test_mutation_is_an_involution(seed, data):
    if not seed.unfrozen:
        return
    k = data.draw(st.sampled_from(seed.unfrozen))
    assert mutate_matrix(mutate_matrix(seed, k), k) == seed
    x = data.draw(points(seed.size))
    once = x_mutation(x, seed, k)
    assert x_mutation(once, mutate_matrix(seed, k), k) == x
    a = data.draw(points(seed.size))
    once = a_mutation(a, seed, k)
    assert a_mutation(once, mutate_matrix(seed, k), k) == a


@given(seeds(), st.data())
def test_ensemble_map_intertwines_mutations(seed, data):
    if not seed.unfrozen:
        return
    k = data.draw(st.sampled_from(seed.unfrozen))
    a = data.draw(points(seed.size))
    lhs = ensemble_rows(a_mutation(a, seed, k), mutate_matrix(seed, k))
    rhs = x_mutation(ensemble_rows(a, seed), seed, k)
    assert [lhs[i] for i in seed.unfrozen] == [rhs[i] for i in seed.unfrozen]


@given(seeds(), st.data())
def test_paths_invert(seed, data):
    if not seed.unfrozen:
        return
    steps = data.draw(st.lists(st.sampled_from(seed.unfrozen), max_size=5))
    path = [Mutate(k) for k in steps]
    x = TropicalPoint("X", data.draw(points(seed.size)))
    y, after = apply_path(x, seed, path)
    back, again = apply_path(y, after, invert_path(path))
    assert back == x and again == seed


@given(seeds(), st.data())
def test_tropical_scaling_equivariance(seed, data):
    if not seed.unfrozen:
        return
    k = data.draw(st.sampled_from(seed.unfrozen))
    x = TropicalPoint("X", data.draw(points(seed.size)))
    c = data.draw(st.fractions(min_value=0, max_value=5, max_denominator=4))
    assert mutate_x_tropical(x.scaled(c), seed, k) == mutate_x_tropical(x, seed, k).scaled(c)


def test_permutation_must_keep_frozen_set():
    seed = ExchangeSeed.from_eps([[0, 1], [-1, 0]], frozen={1})
    with pytest.raises(InvalidPermutation):
        permute_seed(seed, (1, 0))
    with pytest.raises(InvalidPermutation):
        Permute((0, 0))


def test_flavor_is_checked():
    with pytest.raises(FlavorMismatch):
        TropicalPoint("Y", (0,))


def test_json_round_trips():
    seed = ExchangeSeed.from_eps([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], frozen={2})
    assert ExchangeSeed.from_json(seed.to_json()) == seed
    assert seed.to_json()["frozen"] == [3]
    path = (Mutate(0), Permute((1, 0, 2)))
    assert path_to_json(path) == [{"mutate": 1}, {"permute": [2, 1, 3]}]
    assert path_from_json(path_to_json(path)) == path
    p = TropicalPoint("A", ("1/3", "-2", "0"))
    assert TropicalPoint.from_json(p.to_json()) == p
    assert p.to_json()["coords"] == ["1/3", "-2", "0"]


def test_vectorized_rows_agree_with_scalar_rows():
    seed = ExchangeSeed.from_arrows(3, [(0, 1), (1, 2), (2, 0)])
    vecs = orthant_samples(3, extra_random=20, rng_seed=3)
    rows = vectors_to_rows(vecs)
    path = [Mutate(0), Mutate(1), Mutate(2)]
    batch, _ = apply_path_rows(rows, seed, path, "X")
    for s, v in enumerate(vecs):
        single, _ = apply_path_rows(list(v), seed, path, "X")
        assert [batch[i][s] for i in range(3)] == single


def test_orthant_rows_match_orthant_samples_order():
    rows = orthant_rows(3)
    vecs = orthant_samples(3)
    assert len(vecs) == 27
    assert [tuple(int(r[s]) for r in rows) for s in range(27)] == [tuple(map(int, v)) for v in vecs]


def test_random_rationals_are_seeded():
    assert random_rationals(4, 5, 7) == random_rationals(4, 5, 7)
    assert random_rationals(4, 5, 7) != random_rationals(4, 5, 8)


def test_embed_and_first_difference():
    rows = embed_rows(orthant_rows(2), (0, 2), 3)
    assert len(rows) == 3 and not rows[1].any()
    other = [r.copy() for r in rows]
    other[2][5] += 1
    assert first_difference(rows, other) == 5
    assert first_difference(rows, rows) is None
    assert np.array_equal(rows[0], orthant_rows(2)[0])
