from fractions import Fraction

import pytest

from sl3lam.catalog import (catalog, catalog_entry, dstar_chart, entry_point, orientation_reverse,
                            pi_rotation, sign_coherence, track_p_cluster, weight_set_from_z3)
from sl3lam.exchange import Mutate
from sl3lam.lattices import W1, W2, Coweight, Weight, dynkin_star
from sl3lam.maps import casimir, weyl_loop_forms

# values printed under the pictures, in reading order
PRINTED_THETA = [Coweight(), Coweight(), W2, -W1, Coweight(), W1, -W2, W1 - W2, Coweight(), W1, -W1]


def test_eleven_entries_with_printed_theta():
    entries = catalog()
    assert [e.theta for e in entries] == PRINTED_THETA
    ch = dstar_chart()
    for e in entries:
        assert casimir(entry_point(e.coords, ch), ch) == e.theta


def test_variants_keep_the_casimir_rule():
    ch = dstar_chart()
    for e in catalog():
        rev = orientation_reverse(e)
        assert casimir(entry_point(rev.coords, ch), ch) == dynkin_star(e.theta)
        rot = pi_rotation(e)
        assert casimir(entry_point(rot.coords, ch), ch) == e.theta


def test_lookup_and_json():
    e = catalog_entry("curve-3")
    assert e.coords == {1: Fraction(1)}
    assert e.to_json()["theta"] == {"w1": "0", "w2": "1"}
    with pytest.raises(KeyError):
        catalog_entry("nothing")


def test_sign_coherence_predicate():
    a, b = catalog_entry("curve-3"), catalog_entry("curve-2")
    assert sign_coherence([a, catalog_entry("one-honeycomb-2")])
    assert sign_coherence([a, b])
    assert not sign_coherence([catalog_entry("one-honeycomb-1"), catalog_entry("two-honeycomb-2")])


def test_base_station_theta_star():
    ch = dstar_chart()
    st = track_p_cluster(ch, []).stations[0]
    assert [st.theta_star[ch.local[k]] for k in range(1, 7)] == [W1, W1, W2, W2, W2, W2]


def test_dosp_track():
    ch = dstar_chart()
    L = ch.local
    path = [Mutate(L[k]) for k in (5, 3, 2, 6, 4)]
    track = track_p_cluster(ch, path)
    shown = [L[k] for k in (1, 2, 4, 6)]
    want = [
        [(1, 0, 0), (1, 1, 0)],
        [(1, 0, 0), (0, 1, 0), (1, 1, 0)],
        [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 0)],
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)],
    ]
    for station, z3 in zip(track.stations[2:], want):
        assert station.p_cluster(shown) == weight_set_from_z3(z3)


def test_r2_track():
    ch = dstar_chart()
    track = track_p_cluster(ch, weyl_loop_forms(2, ch)["closing"])
    first = [dynkin_star(st.theta_star[ch.local[1]]) for st in track.stations[:3]]
    assert first == [W2, W1 - W2, W1 - W2]
    assert track.stations[1].p_cluster([ch.local[1]]) == {Weight(-1, 1)}
