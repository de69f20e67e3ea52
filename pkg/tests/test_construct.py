import pytest
from hypothesis import given, settings, strategies as st

from polyrep.combinatorics import check_I, check_J, check_K, covers_all, staircase
from polyrep.construct import (construct_family, construct_representation, gray_path, gray_prefix,
                               polygon_lower_bound, theoretical_bounds)
from polyrep.geometry import (BOUNDED, CANONICAL_UNBOUNDED, CLOSED, OPEN, AffineForm, make_polygon,
                              verify_classes, verify_sampled)
from polyrep.minimize import exact_n, lower_bound

from polygens import random_bounded, random_canonical, rng

QUADRANT = make_polygon([AffineForm(1, 0, 0), AffineForm(0, 1, 0)], CANONICAL_UNBOUNDED)
TRIANGLE = make_polygon([AffineForm(1, 0, 0), AffineForm(0, 1, 0), AffineForm(-1, -1, 1)], BOUNDED)


def test_construct_examples():
    assert construct_family(7, 7).members == [(1, 3, 5, 7), (2, 6), (4,)]
    assert construct_family(5, 1) == staircase(5)
    assert construct_family(1, 1).members == [(1,)]


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 32), st.integers(1, 32))
def test_construct_valid(m, k):
    fam = construct_family(m, k)
    assert check_J(fam) is None and check_K(fam, k) is None and covers_all(fam)
    assert lower_bound(m, k) <= fam.n <= m


def test_monotone_in_k():
    for m in range(1, 25):
        sizes = [construct_family(m, k).n for k in range(1, m + 1)]
        assert sizes == sorted(sizes, reverse=True)


def test_matches_exact_for_small_m():
    for m in range(1, 8):
        for k in range(1, m + 1):
            assert construct_family(m, k).n == exact_n(m, k, CLOSED).n_min


def test_gray_helpers():
    cols = gray_prefix(7, 3, 4)
    assert cols == [0, 1, 3, 2, 6, 7, 5, 4]
    assert gray_prefix(8, 3, 8) is None
    path = gray_path(5, 3, 2)
    assert len(set(path)) == 6
    assert all(bin(a ^ b).count("1") == 1 for a, b in zip(path, path[1:]))
    # a closed walk would flip every bit an even number of times
    assert gray_path(6, 3, 2, budget=None) is None


@pytest.mark.parametrize("mode", [OPEN, CLOSED])
def test_quadrant_representation(mode):
    rep = construct_representation(QUADRANT, 2, mode)
    assert rep.n == 2
    assert verify_sampled(QUADRANT, rep).ok
    assert verify_classes(QUADRANT, rep) is None


def test_triangle_representation():
    rep = construct_representation(TRIANGLE, 2, OPEN)
    assert rep.n == 3 and rep.family[0] == (0,)
    assert verify_sampled(TRIANGLE, rep).ok
    rep = construct_representation(TRIANGLE, 1, CLOSED)
    assert sorted(rep.family) == [(0,), (1,), (2,)]


@pytest.mark.parametrize("seed", range(6))
def test_random_round_trip(seed):
    r = rng(100 + seed)
    m = r.randint(3, 9)
    for P in (random_canonical(m, r), random_bounded(m, r)):
        for k in (1, 2, P.m):
            for mode in (OPEN, CLOSED):
                rep = construct_representation(P, k, mode)
                assert all(len(s) <= k for s in rep.family)
                assert rep.n >= polygon_lower_bound(P, k)
                assert verify_sampled(P, rep).ok
                if P.kind == CANONICAL_UNBOUNDED:
                    assert verify_classes(P, rep) is None


def test_open_family_satisfies_I():
    fam = construct_family(12, 3)
    assert check_I(fam) is None


def test_theoretical_bounds_examples():
    b = theoretical_bounds(7, 7)
    assert (b.lower_n, b.achieved_n) == (3, 3)
    b = theoretical_bounds(6, 1)
    assert (b.lower_n, b.achieved_n) == (6, 6)
    b = theoretical_bounds(1, 1)
    assert (b.lower_n, b.achieved_n) == (1, 1)
    assert b.s_mk == 1.0


def test_bad_arguments():
    with pytest.raises(ValueError):
        construct_family(3, 0)
    with pytest.raises(ValueError):
        construct_representation(QUADRANT, 1, "half-open")
