from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import UNIT_SQUARE, full_polygons, polygons
from latticesum.geometry import GeometryError, convex_hull, point_polygon, segment, translate
from latticesum.intersect import (
    EMPTY_JSON,
    Empty,
    Falsified,
    HasLatticePoint,
    LatticeFree,
    LatticeFreeDegenerate,
    Provenance,
    QuadCertificate,
    RationalPolygon,
    classification_json,
    classify_intersection,
    intersect,
    rational_polygon_lattice_points,
)
from oracles import bbox_scan, halfplane_intersection_vertices, rational_bbox_scan

QUAD_P = convex_hull([(0, 0), (1, 0), (2, 1)])
QUAD_Q_SHIFTED = convex_hull([(2, 0), (1, 1), (2, -1)])  # z - Q for Q = conv{(0,1),(1,0),(0,2)}, z = (2, 1)


def _on_some_edge_line(P, tail, head):
    for e in P.edges:
        a, b = e.normal
        c = e.normal.dot(e.tail)
        if a * tail[0] + b * tail[1] == c and a * head[0] + b * head[1] == c:
            return True
    return False


def test_generic_pair_against_halfplane_oracle():
    P = convex_hull([(0, 0), (3, 0), (0, 3)])
    Q = convex_hull([(1, -1), (1, 4), (-2, 1)])
    Z = intersect(P, Q)
    expect = halfplane_intersection_vertices(list(P.halfplanes) + list(Q.halfplanes))
    assert set(Z.vertices) == expect
    assert Z.vertices == ((0, 0), (1, 0), (1, 2), (0, 3))
    assert [t.value for t in Z.provenance] == ["P", "Q", "P", "P"]


def test_disjoint_is_none():
    assert intersect(UNIT_SQUARE, translate(UNIT_SQUARE, (3, 0))) is None
    assert isinstance(classify_intersection(UNIT_SQUARE, translate(UNIT_SQUARE, (3, 0))), Empty)
    assert EMPTY_JSON["vertices"] == []


def test_touching_squares_share_an_edge():
    Z = intersect(UNIT_SQUARE, translate(UNIT_SQUARE, (1, 0)))
    assert Z.vertices == ((1, 0), (1, 1))
    assert Z.rank == 1
    assert all(t is Provenance.SHARED for t in Z.provenance)


def test_identical_polygons_give_shared_edges():
    Z = intersect(UNIT_SQUARE, UNIT_SQUARE)
    assert Z.vertices == UNIT_SQUARE.vertices
    assert set(Z.provenance) == {Provenance.SHARED}


def test_crossing_segments_meet_in_a_rational_point():
    Z = intersect(segment((0, 0), (1, 1)), segment((1, 0), (0, 1)))
    assert Z.vertices == ((F(1, 2), F(1, 2)),)
    res = classify_intersection(segment((0, 0), (1, 1)), segment((1, 0), (0, 1)))
    assert isinstance(res, LatticeFreeDegenerate)


def test_lattice_free_segment_region():
    P = segment((0, 0), (1, 1))
    Q = convex_hull([(0, 1), (1, 0), (0, 2)])
    Z = intersect(P, Q)
    assert Z.vertices == ((F(1, 2), F(1, 2)), (F(2, 3), F(2, 3)))
    assert [t.value for t in Z.provenance] == ["P", "P"]
    assert isinstance(classify_intersection(P, Q), LatticeFreeDegenerate)


def test_point_inside_polygon():
    Z = intersect(point_polygon(1, 1), convex_hull([(0, 0), (3, 0), (0, 3)]))
    assert Z.vertices == ((1, 1),)
    assert Z.provenance == ()


def test_lattice_free_quadrilateral_example():
    Z = intersect(QUAD_P, QUAD_Q_SHIFTED)
    assert Z.vertices == ((F(6, 5), F(3, 5)), (F(4, 3), F(1, 3)), (F(3, 2), F(1, 2)), (F(4, 3), F(2, 3)))
    assert [t.value for t in Z.provenance] == ["Q", "P", "Q", "P"]
    assert set(Z.vertices) == halfplane_intersection_vertices(list(QUAD_P.halfplanes) + list(QUAD_Q_SHIFTED.halfplanes))
    res = classify_intersection(QUAD_P, QUAD_Q_SHIFTED)
    assert isinstance(res, LatticeFree)
    cert = res.certificate
    assert all(e.provenance is Provenance.P for e in cert.from_p)
    assert all(e.provenance is Provenance.Q for e in cert.from_q)
    data = classification_json(res)
    assert data["kind"] == "lattice-free"
    assert len(data["certificate"]["edges"]) == 4


def test_certificate_rejects_bad_pattern():
    Z = intersect(QUAD_P, QUAD_Q_SHIFTED)
    with pytest.raises(GeometryError):
        QuadCertificate(Z.edges, (None, None))  # starts with a Q edge


def test_has_lattice_point_reports_smallest():
    res = classify_intersection(UNIT_SQUARE, convex_hull([(0, 0), (2, 0), (0, 2)]))
    assert isinstance(res, HasLatticePoint)
    assert res.point == (0, 0)


@given(polygons, polygons)
def test_intersection_matches_halfplane_oracle(P, Q):
    Z = intersect(P, Q)
    expect = halfplane_intersection_vertices(list(P.halfplanes) + list(Q.halfplanes))
    if Z is None:
        assert not expect
    else:
        assert set(Z.vertices) == expect


@given(polygons, polygons)
def test_intersection_lattice_points_are_common_points(P, Q):
    Z = intersect(P, Q)
    common = sorted(set(bbox_scan(P)) & set(bbox_scan(Q)))
    got = [] if Z is None else [tuple(p) for p in rational_polygon_lattice_points(Z)]
    assert got == common
    if Z is not None:
        assert got == rational_bbox_scan(Z.vertices)


@given(polygons, polygons)
def test_provenance_names_a_supporting_edge(P, Q):
    Z = intersect(P, Q)
    if Z is None or Z.rank == 0:
        return
    for e in Z.edges:
        on_p = _on_some_edge_line(P, e.tail, e.head) if P.rank == 2 else True
        on_q = _on_some_edge_line(Q, e.tail, e.head) if Q.rank == 2 else True
        if e.provenance is Provenance.P:
            assert on_p
        elif e.provenance is Provenance.Q:
            assert on_q
        else:
            assert on_p and on_q


@given(polygons, polygons)
def test_intersection_is_symmetric_up_to_tags(P, Q):
    a, b = intersect(P, Q), intersect(Q, P)
    assert (a is None) == (b is None)
    if a is not None:
        assert a.vertices == b.vertices
        swap = {Provenance.P: Provenance.Q, Provenance.Q: Provenance.P, Provenance.SHARED: Provenance.SHARED}
        if a.rank == 2:
            assert tuple(swap[t] for t in a.provenance) == b.provenance


@given(polygons, polygons)
def test_lattice_free_intersections_are_alternating_quadrilaterals(P, Q):
    res = classify_intersection(P, Q)
    assert not isinstance(res, Falsified)
    if isinstance(res, LatticeFree):
        assert len(res.region.vertices) == 4


@given(full_polygons, full_polygons)
def test_full_dimensional_inputs_never_give_degenerate_lattice_free_regions(P, Q):
    assert not isinstance(classify_intersection(P, Q), LatticeFreeDegenerate)


def test_rational_polygon_json_round_trip():
    Z = intersect(QUAD_P, QUAD_Q_SHIFTED)
    data = Z.to_json()
    assert data["vertices"][0] == ["6/5", "3/5"]
    assert RationalPolygon.from_json(data) == Z
