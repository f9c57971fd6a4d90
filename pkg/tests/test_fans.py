import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import UNIT_SQUARE, UNIT_TRIANGLE, full_polygons, polygons, unimodular
from latticesum.fans import (
    NormalFan2D,
    coarsens,
    edge_with_normal,
    is_smooth,
    normal_fan,
    positively_spans,
)
from latticesum.geometry import (
    GeometryError,
    LatticeVector,
    convex_hull,
    dilate,
    linear_image,
    minkowski_sum,
    point_polygon,
    segment,
    translate,
)


def test_unit_square_fan():
    assert normal_fan(UNIT_SQUARE).to_json() == {"rays": [[1, 0], [0, 1], [-1, 0], [0, -1]]}


def test_unit_triangle_fan():
    assert normal_fan(UNIT_TRIANGLE).to_json() == {"rays": [[1, 1], [-1, 0], [0, -1]]}


def test_degenerate_fans():
    assert normal_fan(point_polygon(4, 4)).rays == ()
    assert normal_fan(segment((0, 0), (2, 4))).to_json() == {"rays": [[-2, 1], [2, -1]]}


def test_fan_rejects_bad_rays():
    with pytest.raises(GeometryError):
        NormalFan2D((LatticeVector(2, 0),), 2)
    with pytest.raises(GeometryError):
        NormalFan2D((LatticeVector(1, 0), LatticeVector(1, 0)), 2)


@given(polygons)
def test_rays_are_primitive_and_sorted_by_angle(P):
    rays = normal_fan(P).rays
    assert all(r.primitive for r in rays)
    angles = [math.atan2(r.dy, r.dx) % (2 * math.pi) for r in rays]
    assert angles == sorted(angles)


@given(polygons, st.integers(1, 5), st.integers(-9, 9), st.integers(-9, 9))
def test_fan_is_invariant_under_dilation_and_translation(P, k, dx, dy):
    assert normal_fan(translate(dilate(P, k), (dx, dy))) == normal_fan(P)


@given(polygons, polygons)
def test_summands_coarsen_the_sum(P, Q):
    S = normal_fan(minkowski_sum(P, Q))
    assert coarsens(normal_fan(P), S)
    assert coarsens(normal_fan(Q), S)


@given(polygons)
def test_coarsening_is_reflexive(P):
    assert coarsens(normal_fan(P), normal_fan(P))


def test_coarsening_examples():
    assert coarsens(normal_fan(segment((0, 0), (1, 0))), normal_fan(UNIT_SQUARE))
    assert not coarsens(normal_fan(UNIT_SQUARE), normal_fan(segment((0, 0), (1, 0))))
    assert not coarsens(normal_fan(UNIT_TRIANGLE), normal_fan(UNIT_SQUARE))
    # a point has no rays, so it coarsens every fan
    assert coarsens(normal_fan(point_polygon(0, 0)), normal_fan(UNIT_TRIANGLE))


def test_smoothness_examples():
    assert is_smooth(UNIT_SQUARE)
    assert is_smooth(UNIT_TRIANGLE)
    assert not is_smooth(convex_hull([(0, 0), (2, 1), (1, 2)]))
    assert not is_smooth(convex_hull([(0, 0), (2, 0), (0, 1)]))
    with pytest.raises(GeometryError):
        is_smooth(segment((0, 0), (1, 1)))


@given(full_polygons, unimodular)
def test_smoothness_is_a_lattice_invariant(P, m):
    assert is_smooth(linear_image(P, m)) == is_smooth(P)


@given(full_polygons)
def test_dilation_preserves_smoothness(P):
    assert is_smooth(dilate(P, 3)) == is_smooth(P)


def test_edge_with_normal():
    e = edge_with_normal(UNIT_SQUARE, (0, -1))
    assert (e.tail, e.head) == ((0, 0), (1, 0))
    assert edge_with_normal(UNIT_SQUARE, (1, 1)) is None


def test_positive_spanning():
    assert positively_spans(normal_fan(UNIT_TRIANGLE))
    assert not positively_spans(normal_fan(segment((0, 0), (1, 0))))
    assert not positively_spans(normal_fan(point_polygon(0, 0)))


@given(full_polygons)
def test_full_dimensional_fans_positively_span(P):
    assert positively_spans(normal_fan(P))
