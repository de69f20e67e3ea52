from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from polyrep.geometry import (BOUNDED, CANONICAL_UNBOUNDED, CLOSED, OPEN, AffineForm, BadIndex,
                              BoundedButMarkedUnbounded, EmptyInterior, NotConsecutiveOrder,
                              ParallelUnboundedEdges, ProductRep, RedundantHalfplane,
                              UnboundedButMarkedBounded, class_witness, eval_product, eval_table,
                              expand_product, find_point, illuminated, interval_witness,
                              make_polygon, realized_classes, sample_witnesses, verify_classes,
                              verify_sampled)

from polygens import bounded_forms, canonical_forms, random_bounded, random_canonical, rng

X1 = AffineForm(1, 0, 0)
X2 = AffineForm(0, 1, 0)


@pytest.fixture
def quadrant():
    return make_polygon([X1, X2], CANONICAL_UNBOUNDED)


@pytest.fixture
def triangle():
    return make_polygon([X1, X2, AffineForm(-1, -1, 1)], BOUNDED)


def test_quadrant(quadrant):
    assert quadrant.m == 2
    assert quadrant.vertices == ((0, 0),)
    assert quadrant.status((1, 1)) == "interior"


def test_triangle_vertices(triangle):
    assert set(triangle.vertices) == {(0, 0), (1, 0), (0, 1)}
    assert triangle.m == 2
    assert list(triangle.labels) == [0, 1, 2]


def test_redundant_reports_position():
    with pytest.raises(RedundantHalfplane) as err:
        make_polygon([X1, X2, AffineForm(1, 0, 1)], CANONICAL_UNBOUNDED)
    assert err.value.index == 3


def test_cutting_form_is_not_redundant():
    # x1 + x2 >= 1 cuts the quadrant, giving a canonical 3-gon
    P = make_polygon([X1, AffineForm(1, 1, -1), X2], CANONICAL_UNBOUNDED)
    assert P.m == 3 and len(P.vertices) == 2


def test_polygon_errors():
    with pytest.raises(EmptyInterior):
        make_polygon([X1, -X1], CANONICAL_UNBOUNDED)
    with pytest.raises(ParallelUnboundedEdges):
        make_polygon([X2, AffineForm(0, -1, 1)], CANONICAL_UNBOUNDED)
    with pytest.raises(UnboundedButMarkedBounded):
        make_polygon([X1, X2], BOUNDED)
    with pytest.raises(BoundedButMarkedUnbounded):
        make_polygon([X1, X2, AffineForm(-1, -1, 1)], CANONICAL_UNBOUNDED)
    with pytest.raises(NotConsecutiveOrder):
        make_polygon([X1, AffineForm(0, -1, 1), X2, AffineForm(-1, 0, 1)], BOUNDED)
    with pytest.raises(ValueError):
        AffineForm(0, 0, 1)
    with pytest.raises(TypeError):
        AffineForm(0.5, 1, 0)


def test_reversed_order_accepted():
    P = make_polygon([X2, X1], CANONICAL_UNBOUNDED)
    assert P.m == 2


def test_illuminated(quadrant, triangle):
    s = illuminated(quadrant, (-1, -1))
    assert s.lt == {1, 2} and s.eq == set()
    s = illuminated(quadrant, (0, -1))
    assert s.lt == {2} and s.eq == {1}
    # labels of a bounded polygon start at 0, so the third form is label 2
    assert illuminated(triangle, (2, 2)).lt == {2}


def test_eval_product(quadrant):
    assert eval_product(quadrant, [1, 2], (2, 3)) == 6
    assert eval_product(quadrant, [1, 2], (0, -1)) == 0
    assert eval_product(quadrant, [], (F(7, 3), -5)) == 1
    assert eval_product(quadrant, [1, 1], (-2, 0)) == 4
    with pytest.raises(BadIndex):
        eval_product(quadrant, [3], (0, 0))


def test_expand_product():
    t = expand_product([X1, X2])
    assert t[1][1] == 1 and sum(abs(c) for row in t for c in row) == 1
    assert expand_product([]) == [[1]]
    t = expand_product([AffineForm(1, 0, 1), AffineForm(1, 0, -1)])
    assert t[2][0] == 1 and t[0][0] == -1
    assert sum(abs(c) for row in t for c in row) == 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
                .filter(lambda t: t[0] or t[1]), max_size=4),
       st.tuples(st.fractions(max_denominator=7), st.fractions(max_denominator=7)))
def test_expansion_matches_evaluation(coeffs, x):
    forms = [AffineForm(*c) for c in coeffs]
    want = F(1)
    for f in forms:
        want *= f(x)
    assert eval_table(expand_product(forms), x) == want


def test_interval_witness(quadrant):
    x = interval_witness(quadrant, 1, 2)
    assert x[0] < 0 and x[1] < 0
    x = interval_witness(quadrant, 1, 1)
    assert x[0] < 0 and x[1] > 0
    with pytest.raises(BadIndex):
        interval_witness(quadrant, 2, 1)


def test_find_point_strict_and_equalities():
    x = find_point([X1, X2, AffineForm(-1, -1, 1)])
    assert x[0] > 0 and x[1] > 0 and x[0] + x[1] < 1
    x = find_point([X2], zero=[X1])
    assert x[0] == 0 and x[1] > 0
    assert find_point([X1, -X1]) is None


def test_sample_witnesses_quadrant(quadrant):
    pts = {w.point: w.status for w in sample_witnesses(quadrant)}
    assert pts[(1, 1)] == "interior"
    assert pts[(0, -1)] == "exterior"
    assert pts[(-1, -1)] == "exterior"


def test_sample_witnesses_halfplane():
    H = make_polygon([X1], CANONICAL_UNBOUNDED)
    pts = {w.point: w.status for w in sample_witnesses(H)}
    assert pts[(1, 0)] == "interior"
    assert pts[(0, 0)] == "boundary"
    assert pts[(-1, 0)] == "exterior"


def test_sample_tags_match_illumination(triangle):
    ws = sample_witnesses(triangle)
    assert len(ws) >= 3 * 5 + 3 * 4
    for w in ws:
        s = illuminated(triangle, w.point)
        want = "exterior" if s.lt else "boundary" if s.eq else "interior"
        assert w.status == want


def test_quadrant_regression(quadrant):
    assert verify_sampled(quadrant, ProductRep(((1,), (1, 2)), OPEN)).ok
    bad = verify_sampled(quadrant, ProductRep(((1,), (1, 2)), CLOSED))
    assert not bad.ok and bad.counterexample == (0, -1)
    assert verify_sampled(quadrant, ProductRep(((1,), (2,)), CLOSED)).ok


def test_realized_classes_are_realized():
    for seed in range(5):
        P = random_canonical(2 + seed, rng(seed))
        for lt, eq in realized_classes(P):
            s = illuminated(P, class_witness(P, lt, eq))
            assert s.lt == lt and s.eq == eq


def test_verify_classes_agrees_with_sampling():
    P = random_canonical(4, rng(11))
    good = ProductRep(((1,), (2,), (3,), (4,)), CLOSED)
    assert verify_classes(P, good) is None and verify_sampled(P, good).ok
    bad = ProductRep(((1,), (1, 2), (3,), (4,)), CLOSED)
    assert verify_classes(P, bad) is not None and not verify_sampled(P, bad).ok


@pytest.mark.parametrize("seed", range(8))
def test_random_polygons_validate(seed):
    r = rng(seed)
    m = r.randint(3, 10)
    P = random_canonical(m, r)
    assert P.kind == CANONICAL_UNBOUNDED and P.m == m and len(P.vertices) == m - 1
    Q = random_bounded(m, r)
    assert Q.kind == BOUNDED and len(Q.vertices) == m
    assert len(canonical_forms(m, r)) == m and len(bounded_forms(m, r)) == m
