import pytest

from sl3lam.exact_sequence import (annihilates, annihilator_rank, in_kernel, kernel_rank,
                                   ring_vectors, verify_exact_sequence)
from sl3lam.triangulation import build_quiver, load_triangulation

RANKS = {"dstar": (2, 6), "square": (0, 8), "torus": (2, 2), "triangle": (0, 6),
         "annulus": (0, 4), "twice_punctured_disk": (4, 8)}


@pytest.mark.parametrize("name", sorted(RANKS))
def test_ranks(name):
    tri = load_triangulation(name)
    seed, _ = build_quiver(tri)
    assert (kernel_rank(seed), annihilator_rank(seed)) == RANKS[name]
    report = verify_exact_sequence(tri)
    assert report["passed"], [c for c in report["checks"] if not c["passed"]]


def test_dstar_chart_vectors_by_hand():
    tri = load_triangulation("dstar")
    seed, layout = build_quiver(tri)
    alpha1, alpha2 = ring_vectors(tri, layout, "p")
    # labels 3..6 and 1..2 in the chart, which are vertex ids 2..5 and 0..1
    assert alpha1 == (0, 0, 1, 1, 1, 1, 0, 0, 0, 0)
    assert alpha2 == (1, 1, 0, 0, 0, 0, 0, 0, 0, 0)
    assert in_kernel(seed, alpha1) and in_kernel(seed, alpha2)
    assert not in_kernel(seed, (1,) + (0,) * 9)


def test_torus_ring_vectors():
    tri = load_triangulation("torus")
    seed, layout = build_quiver(tri)
    for v in ring_vectors(tri, layout, "p"):
        assert in_kernel(seed, v) and annihilates(seed, v)
