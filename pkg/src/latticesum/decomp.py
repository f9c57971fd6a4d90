"""The addition map ``(x, y) -> x + y`` on lattice points, and its gaps.

Given lattice polygons ``P`` and ``Q`` the map sends pairs of lattice
points of ``P`` and ``Q`` to lattice points of ``P + Q``.  A *gap* is a
lattice point of ``P + Q`` outside its image.  Two independent routes
find the gaps:

* :func:`sumset_check` forms the sumset row by row and compares it to the
  lattice points of ``P + Q``;
* :func:`howard_check` asks, for each lattice point ``z`` of ``P + Q``,
  whether the rational polygon ``P & (z - Q)`` contains a lattice point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Optional, Union

import numpy as np

from . import kernels
from .fans import coarsens, normal_fan
from .geometry import (
    GeometryError,
    LatticePoint,
    LatticePolygon,
    lattice_point_count,
    lattice_points,
    minkowski_sum,
    negate,
    translate,
)
from .intersect import RationalPolygon, intersect, rational_polygon_lattice_points

Witness = tuple[LatticePoint, LatticePoint]


@dataclass(frozen=True)
class SumsetReport:
    surjective: bool
    gap_points: tuple[LatticePoint, ...]
    sizes: dict
    witnesses: Optional[dict] = None
    method: str = "brute"
    P: Optional[LatticePolygon] = field(default=None, repr=False, compare=False)
    Q: Optional[LatticePolygon] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.surjective != (not self.gap_points):
            raise GeometryError("surjective flag disagrees with gap list")
        if self.witnesses is None:
            return
        if set(self.witnesses) & set(self.gap_points):
            raise GeometryError("a gap point carries a witness")
        for z, (x, y) in self.witnesses.items():
            if (x[0] + y[0], x[1] + y[1]) != tuple(z):
                raise GeometryError(f"witness {x} + {y} does not sum to {z}")
            if self.P is not None and not self.P.contains(x):
                raise GeometryError(f"witness {x} is not in P")
            if self.Q is not None and not self.Q.contains(y):
                raise GeometryError(f"witness {y} is not in Q")

    def to_json(self, with_witnesses: bool = False) -> dict:
        out = {
            "surjective": self.surjective,
            "gaps": [list(z) for z in self.gap_points],
            "sizes": dict(self.sizes),
        }
        if with_witnesses and self.witnesses is not None:
            out["witnesses"] = [[list(z), list(x), list(y)] for z, (x, y) in sorted(self.witnesses.items())]
        return out


def _sizes(P, Q, S) -> dict:
    return {"P": lattice_point_count(P), "Q": lattice_point_count(Q), "sum": lattice_point_count(S)}


def sumset_check(P: LatticePolygon, Q: LatticePolygon, witnesses: bool = True) -> SumsetReport:
    """Brute-force comparison of ``(P & Z^2) + (Q & Z^2)`` with ``(P + Q) & Z^2``.

    The sumset of two convex lattice sets is assembled row by row: the sum
    of a row of ``P`` and a row of ``Q`` is an integer interval.  With
    ``witnesses`` every decomposable point gets its decomposition
    ``z = x + y`` with ``x`` lexicographically smallest.
    """
    S = minkowski_sum(P, Q)
    ay0, alo, ahi = P.row_spans
    by0, blo, bhi = Q.row_spans
    cy0, clo, chi = S.row_spans
    gx, gy, contained = kernels.sumset_gaps(ay0, alo, ahi, by0, blo, bhi, cy0, clo, chi)
    if not contained:
        raise AssertionError("sumset of lattice points escapes the Minkowski sum")
    gaps = tuple(sorted(LatticePoint(int(x), int(y)) for x, y in zip(gx, gy)))
    wit = None
    if witnesses:
        gap_set = set(gaps)
        targets = [z for z in lattice_points(S) if z not in gap_set]
        zx = np.array([z.x for z in targets], dtype=np.int64)
        zy = np.array([z.y for z in targets], dtype=np.int64)
        wx, wy, found = kernels.lex_witnesses(ay0, alo, ahi, by0, blo, bhi, zx, zy)
        if not found.all():
            raise AssertionError("row sumset and witness search disagree")
        wit = {}
        for z, x, y in zip(targets, wx.tolist(), wy.tolist()):
            x = LatticePoint(x, y)
            wit[z] = (x, z - x)
    return SumsetReport(not gaps, gaps, _sizes(P, Q, S), wit, "brute", P, Q)


def howard_check(P: LatticePolygon, Q: LatticePolygon, witnesses: bool = True) -> SumsetReport:
    """Gap search through lattice points of ``P & (z - Q)`` for each ``z`` in ``P + Q``.

    Points ``z`` outside ``P + Q`` make both sides of the criterion false,
    so only lattice points of ``P + Q`` are visited.
    """
    S = minkowski_sum(P, Q)
    neg_q = negate(Q)
    gaps = []
    wit = {} if witnesses else None
    for z in lattice_points(S):
        region = intersect(P, translate(neg_q, z))
        if region is None:
            raise AssertionError(f"{z} lies in P + Q but P & (z - Q) is empty")
        pts = rational_polygon_lattice_points(region)
        if not pts:
            gaps.append(z)
        elif wit is not None:
            wit[z] = (pts[0], z - pts[0])
    return SumsetReport(not gaps, tuple(gaps), _sizes(P, Q, S), wit, "howard", P, Q)


def decompose(z, P: LatticePolygon, Q: LatticePolygon) -> Optional[Witness]:
    """``(x, y)`` with ``x + y = z``, ``x`` the smallest lattice point of ``P & (z - Q)``.

    Returns None when ``z`` is a gap.  Raises GeometryError if ``z`` is not
    in ``P + Q`` at all.
    """
    z = LatticePoint(*z)
    if not minkowski_sum(P, Q).contains(z):
        raise GeometryError(f"{tuple(z)} is not in P + Q")
    region = intersect(P, translate(negate(Q), z))
    pts = rational_polygon_lattice_points(region)
    if not pts:
        return None
    return pts[0], z - pts[0]


# --------------------------------------------------------------------------
# lattice points in P & Q under the fan hypothesis


@dataclass(frozen=True)
class NotApplicable:
    reason: str
    kind = "not-applicable"


@dataclass(frozen=True)
class Verified:
    point: LatticePoint
    kind = "verified"


@dataclass(frozen=True)
class Falsified:
    P: LatticePolygon
    Q: LatticePolygon
    region: RationalPolygon
    kind = "falsified"

    def to_json(self) -> dict:
        return {"P": self.P.to_json(), "Q": self.Q.to_json(), "region": self.region.to_json()}


Outcome = Union[NotApplicable, Verified, Falsified]


def verify_reformulated(P: LatticePolygon, Q: LatticePolygon) -> Outcome:
    """If ``P & Q`` is nonempty and the fan of ``-Q`` coarsens the fan of ``P``,
    ``P & Q`` should contain a lattice point."""
    if not coarsens(normal_fan(negate(Q)), normal_fan(P)):
        return NotApplicable("fan of -Q does not coarsen fan of P")
    region = intersect(P, Q)
    if region is None:
        return NotApplicable("P and Q are disjoint")
    pts = rational_polygon_lattice_points(region)
    if not pts:
        return Falsified(P, Q, region)
    return Verified(pts[0])


def outcome_json(result: Outcome) -> dict:
    out = {"kind": result.kind}
    if isinstance(result, NotApplicable):
        out["reason"] = result.reason
    elif isinstance(result, Verified):
        out["point"] = list(result.point)
    else:
        out.update(result.to_json())
    return out


# --------------------------------------------------------------------------
# three-dimensional simplices


Point3 = tuple[int, int, int]


def _det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _sub3(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


@dataclass(frozen=True)
class LatticeSimplex3:
    vertices: tuple[Point3, Point3, Point3, Point3]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(int(c) for c in v) for v in self.vertices))
        if len(self.vertices) != 4:
            raise GeometryError("a 3-simplex has four vertices")
        if self.volume == 0:
            raise GeometryError("simplex vertices are affinely dependent")

    @property
    def _edges(self):
        v0 = self.vertices[0]
        return [_sub3(v, v0) for v in self.vertices[1:]]

    @property
    def volume(self) -> int:
        """Normalized volume ``|det(v1 - v0, v2 - v0, v3 - v0)|``."""
        return abs(_det3(*self._edges))

    def contains(self, p) -> bool:
        """Exact barycentric membership test; ``p`` may be rational."""
        e1, e2, e3 = self._edges
        d = _det3(e1, e2, e3)
        r = tuple(Fraction(p[i]) - self.vertices[0][i] for i in range(3))
        # Cramer's rule, scaled by d
        num = (_det3(r, e2, e3), _det3(e1, r, e3), _det3(e1, e2, r))
        if d < 0:
            num = tuple(-n for n in num)
            d = -d
        return all(n >= 0 for n in num) and sum(num) <= d

    def bbox(self, scale: int = 1):
        lo = tuple(scale * min(v[i] for v in self.vertices) for i in range(3))
        hi = tuple(scale * max(v[i] for v in self.vertices) for i in range(3))
        return lo, hi

    def lattice_points(self) -> list[Point3]:
        lo, hi = self.bbox()
        ranges = [range(lo[i], hi[i] + 1) for i in range(3)]
        return [p for p in product(*ranges) if self.contains(p)]

    def double_lattice_points(self) -> list[Point3]:
        """Lattice points of ``2P``, tested as membership of ``z / 2`` in ``P``."""
        lo, hi = self.bbox(2)
        ranges = [range(lo[i], hi[i] + 1) for i in range(3)]
        return [z for z in product(*ranges) if self.contains(tuple(Fraction(c, 2) for c in z))]

    def self_sum_gaps(self) -> list[Point3]:
        """Lattice points of ``P + P`` that are not sums of two lattice points of ``P``."""
        pts = self.lattice_points()
        sums = {tuple(a[i] + b[i] for i in range(3)) for a, b in combinations_with_replacement(pts, 2)}
        return [z for z in self.double_lattice_points() if z not in sums]


SIMPLEX_VOLUME_TWO = LatticeSimplex3(((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)))


@dataclass(frozen=True)
class SimplexReport:
    vertices: tuple[Point3, ...]
    volume: int
    lattice_points: tuple[Point3, ...]
    centroid_of_sum: Point3
    centroid_in_double: bool
    vertex_sums: tuple[Point3, ...]
    gaps: tuple[Point3, ...]

    @property
    def checks(self) -> dict:
        vertex_set = set(self.vertices)
        return {
            "volume_is_two": self.volume == 2,
            "only_vertices": len(self.lattice_points) == 4 and set(self.lattice_points) == vertex_set,
            "centroid_is_gap": (self.centroid_in_double and self.centroid_of_sum not in self.vertex_sums
                                and self.centroid_of_sum in self.gaps),
        }

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "volume": self.volume,
            "lattice_points": [list(p) for p in self.lattice_points],
            "centroid_of_sum": list(self.centroid_of_sum),
            "centroid_in_double": self.centroid_in_double,
            "vertex_sums": [list(p) for p in self.vertex_sums],
            "gaps": [list(p) for p in self.gaps],
            "checks": self.checks,
            "passed": self.passed,
        }


def verify_3d_counterexample(simplex: LatticeSimplex3 = SIMPLEX_VOLUME_TWO) -> SimplexReport:
    """Volume-two simplex whose only lattice points are its vertices: the
    centroid of ``P + P`` is a lattice point missed by the addition map."""
    vs = simplex.vertices
    total = tuple(sum(v[i] for v in vs) for i in range(3))
    # centroid of P + P is twice the centroid of P
    if any(2 * t % 4 for t in total):
        raise GeometryError("centroid of P + P is not a lattice point for this simplex")
    centroid = tuple(2 * t // 4 for t in total)
    sums = sorted({tuple(a[i] + b[i] for i in range(3)) for a, b in combinations_with_replacement(vs, 2)})
    return SimplexReport(
        vertices=vs,
        volume=simplex.volume,
        lattice_points=tuple(simplex.lattice_points()),
        centroid_of_sum=centroid,
        centroid_in_double=simplex.contains(tuple(Fraction(c, 2) for c in centroid)),
        vertex_sums=tuple(sums),
        gaps=tuple(simplex.self_sum_gaps()),
    )
