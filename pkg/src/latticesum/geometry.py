"""Exact integer geometry of lattice polygons.

Polygons are immutable and canonical: vertices run counterclockwise from
the lexicographically smallest one, with no repeated or collinear
vertices.  Points and segments are valid polygons of rank 0 and 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key
from math import gcd
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import kernels

COORD_BOUND = 1 << 20


class GeometryError(ValueError):
    pass


class CoordinateOverflowError(GeometryError):
    pass


class PolygonFormatError(GeometryError):
    """Malformed polygon input; ``code`` is a stable machine-readable tag."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message

    def to_dict(self) -> dict:
        return {"error": self.code, "message": self.message}


class LatticePoint(NamedTuple):
    x: int
    y: int

    def __add__(self, other):
        return LatticePoint(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return LatticePoint(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return LatticePoint(-self.x, -self.y)


class LatticeVector(NamedTuple):
    dx: int
    dy: int

    @property
    def primitive(self) -> bool:
        return gcd(self.dx, self.dy) == 1

    def primitive_part(self) -> LatticeVector:
        g = gcd(self.dx, self.dy)
        if g == 0:
            raise GeometryError("zero vector has no primitive part")
        return LatticeVector(self.dx // g, self.dy // g)

    def dot(self, p) -> int:
        return self.dx * p[0] + self.dy * p[1]

    def __neg__(self):
        return LatticeVector(-self.dx, -self.dy)


def cross(o, a, b):
    """Twice the signed area of triangle ``o, a, b``; positive if counterclockwise."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _angle_half(v) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2*pi)
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(u, v) -> int:
    hu, hv = _angle_half(u), _angle_half(v)
    if hu != hv:
        return hu - hv
    d = det(u, v)
    return -1 if d > 0 else (1 if d < 0 else 0)


angle_key = cmp_to_key(_angle_cmp)
"""Sort key ordering nonzero vectors by angle in ``[0, 2*pi)``."""


def hull_vertices(points: Iterable) -> list:
    """Andrew's monotone chain over any exact coordinate type.

    Returns the strictly convex vertex cycle, counterclockwise from the
    lexicographic minimum.  Collinear inputs give ``[min, max]``.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    cycle = lower[:-1] + upper[:-1]
    if len(cycle) == 2 and cycle[0] == cycle[1]:
        return cycle[:1]
    return cycle


def _check_bound(x: int, y: int) -> None:
    if abs(x) > COORD_BOUND or abs(y) > COORD_BOUND:
        raise CoordinateOverflowError(f"coordinate ({x}, {y}) exceeds bound 2**20")


@dataclass(frozen=True)
class Edge:
    tail: LatticePoint
    head: LatticePoint

    @property
    def direction(self) -> LatticeVector:
        return LatticeVector(self.head.x - self.tail.x, self.head.y - self.tail.y)

    @property
    def normal(self) -> LatticeVector:
        """Primitive outer normal, assuming the interior lies to the left."""
        d = self.direction
        return LatticeVector(d.dy, -d.dx).primitive_part()

    @property
    def lattice_length(self) -> int:
        d = self.direction
        return gcd(d.dx, d.dy)

    def lattice_points(self) -> list[LatticePoint]:
        step = self.direction.primitive_part()
        return [LatticePoint(self.tail.x + k * step.dx, self.tail.y + k * step.dy)
                for k in range(self.lattice_length + 1)]


@dataclass(frozen=True)
class LatticePolygon:
    """Convex hull of finitely many lattice points, in canonical form."""

    vertices: tuple[LatticePoint, ...]

    def __post_init__(self):
        vs = self.vertices
        if not vs:
            raise GeometryError("polygon needs at least one vertex")
        for v in vs:
            if not all(isinstance(c, (int, np.integer)) and not isinstance(c, bool) for c in v):
                raise GeometryError(f"non-integer vertex {v!r}")
            _check_bound(int(v[0]), int(v[1]))
        if not all(type(v) is LatticePoint and type(v.x) is int and type(v.y) is int for v in vs):
            object.__setattr__(self, "vertices", tuple(LatticePoint(int(v[0]), int(v[1])) for v in vs))
            vs = self.vertices
        if min(vs) != vs[0] or len(set(vs)) != len(vs):
            raise GeometryError("vertices not in canonical order")
        if len(vs) >= 3:
            n = len(vs)
            if any(cross(vs[i - 1], vs[i], vs[(i + 1) % n]) <= 0 for i in range(n)):
                raise GeometryError("vertices not strictly convex and counterclockwise")

    @classmethod
    def hull(cls, points: Iterable) -> LatticePolygon:
        return convex_hull(points)

    @property
    def rank(self) -> int:
        return min(len(self.vertices) - 1, 2)

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        vs = self.vertices
        if len(vs) == 1:
            return ()
        return tuple(Edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    @cached_property
    def halfplanes(self) -> tuple[tuple[int, int, int], ...]:
        """Inequalities ``a*x + b*y <= c`` whose solution set is the polygon."""
        vs = self.vertices
        if self.rank == 2:
            out = []
            for e in self.edges:
                n = e.normal
                out.append((n.dx, n.dy, n.dot(e.tail)))
            return tuple(out)
        if self.rank == 1:
            a, b = vs
            u = Edge(a, b).direction.primitive_part()
            n = LatticeVector(u.dy, -u.dx)
            return ((n.dx, n.dy, n.dot(a)), (-n.dx, -n.dy, -n.dot(a)),
                    (u.dx, u.dy, u.dot(b)), (-u.dx, -u.dy, -u.dot(a)))
        (x, y), = vs
        return ((1, 0, x), (-1, 0, -x), (0, 1, y), (0, -1, -y))

    def contains(self, p) -> bool:
        """Membership of an integer or rational point."""
        return all(a * p[0] + b * p[1] <= c for a, b, c in self.halfplanes)

    @property
    def bbox(self) -> tuple[int, int, int, int]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    @cached_property
    def row_spans(self) -> tuple[int, np.ndarray, np.ndarray]:
        """``(y0, lo, hi)``: lattice points of row ``y0 + i`` are ``lo[i]..hi[i]``."""
        _, y0, _, y1 = self.bbox
        hp = np.array(self.halfplanes, dtype=np.int64)
        lo, hi = kernels.row_spans(np.ascontiguousarray(hp[:, :2]), np.ascontiguousarray(hp[:, 2]), y0, y1)
        return y0, lo, hi

    def to_json(self) -> dict:
        return {"dim": 2, "vertices": [[v.x, v.y] for v in self.vertices]}

    @classmethod
    def from_json(cls, data) -> LatticePolygon:
        return parse_polygon(data)

    def __repr__(self) -> str:
        return f"LatticePolygon({[tuple(v) for v in self.vertices]})"


def convex_hull(points: Iterable) -> LatticePolygon:
    pts = []
    for p in points:
        x, y = p
        if isinstance(x, bool) or isinstance(y, bool) or not isinstance(x, (int, np.integer)) \
                or not isinstance(y, (int, np.integer)):
            raise GeometryError(f"non-integer point {p!r}")
        _check_bound(int(x), int(y))
        pts.append(LatticePoint(int(x), int(y)))
    if not pts:
        raise GeometryError("convex hull of an empty point set")
    return LatticePolygon(tuple(hull_vertices(pts)))


def point_polygon(x: int, y: int) -> LatticePolygon:
    return LatticePolygon((LatticePoint(x, y),))


def segment(a, b) -> LatticePolygon:
    return convex_hull([a, b])


def lattice_points(P: LatticePolygon) -> list[LatticePoint]:
    """All lattice points of ``P`` in lexicographic order."""
    y0, lo, hi = P.row_spans
    by_x: list[LatticePoint] = []
    for i in range(lo.size):
        a, b = int(lo[i]), int(hi[i])
        by_x.extend(LatticePoint(x, y0 + i) for x in range(a, b + 1))
    by_x.sort()
    return by_x


def lattice_point_count(P: LatticePolygon) -> int:
    _, lo, hi = P.row_spans
    return int(np.maximum(hi - lo + 1, 0).sum())


def non_vertex_lattice_points(P: LatticePolygon) -> list[LatticePoint]:
    corners = set(P.vertices)
    return [p for p in lattice_points(P) if p not in corners]


def area2(P: LatticePolygon) -> int:
    """Twice the area (shoelace)."""
    vs = P.vertices
    if len(vs) < 3:
        return 0
    return sum(det(vs[i - 1], vs[i]) for i in range(len(vs)))


def boundary_count(P: LatticePolygon) -> int:
    """Number of lattice points on the boundary."""
    if P.rank == 0:
        return 1
    if P.rank == 1:
        return P.edges[0].lattice_length + 1
    return sum(e.lattice_length for e in P.edges)


def translate(P: LatticePolygon, v) -> LatticePolygon:
    return LatticePolygon(tuple(LatticePoint(p.x + v[0], p.y + v[1]) for p in P.vertices))


def negate(P: LatticePolygon) -> LatticePolygon:
    return convex_hull(-p for p in P.vertices)


def dilate(P: LatticePolygon, k: int) -> LatticePolygon:
    if k < 1:
        raise GeometryError("dilation factor must be a positive integer")
    return LatticePolygon(tuple(LatticePoint(k * p.x, k * p.y) for p in P.vertices))


def linear_image(P: LatticePolygon, m: Sequence[Sequence[int]]) -> LatticePolygon:
    """Image under the integer matrix ``m`` acting on column vectors."""
    (a, b), (c, d) = m
    return convex_hull((a * p.x + b * p.y, c * p.x + d * p.y) for p in P.vertices)


def minkowski_sum(P: LatticePolygon, Q: LatticePolygon) -> LatticePolygon:
    """Minkowski sum by merging edge vectors in angular order."""
    vectors = [e.direction for e in P.edges] + [e.direction for e in Q.edges]
    vectors.sort(key=angle_key)
    merged: list[LatticeVector] = []
    for v in vectors:
        if merged and _angle_cmp(merged[-1], v) == 0:
            last = merged.pop()
            v = LatticeVector(last.dx + v.dx, last.dy + v.dy)
        merged.append(v)
    # the walk starts at the bottom-most (then left-most) vertex
    key = lambda p: (p.y, p.x)
    start = min(P.vertices, key=key) + min(Q.vertices, key=key)
    _check_bound(*start)
    walk = [start]
    for v in merged[:-1]:
        walk.append(walk[-1] + v)
    if len(walk) == 2:
        walk.sort()
    else:
        i = walk.index(min(walk))
        walk = walk[i:] + walk[:i]
    return LatticePolygon(tuple(walk))


def lattice_width(P: LatticePolygon) -> tuple[int, LatticeVector]:
    """Lattice width and a primitive direction attaining it.

    The direction is normalised to have ``dx > 0`` or ``dx == 0, dy > 0``.
    A point has width 0 in direction ``(1, 0)`` by convention.
    """
    if P.rank == 0:
        return 0, LatticeVector(1, 0)
    if P.rank == 1:
        n = P.edges[0].normal
        return 0, _canonical_direction(n)

    def width(w) -> int:
        vals = [w[0] * v.x + w[1] * v.y for v in P.vertices]
        return max(vals) - min(vals)

    best = None
    # minimal euclidean width over edges: h / |n| with h the height above the edge
    h_min, n2_min = None, None
    for e in P.edges:
        n = e.normal
        h = n.dot(e.tail) - min(n.dot(v) for v in P.vertices)
        cand = (width(n), n.dx * n.dx + n.dy * n.dy, *_canonical_direction(n))
        best = cand if best is None or cand < best else best
        if h_min is None or h * h * n2_min < h_min * h_min * (n.dx * n.dx + n.dy * n.dy):
            h_min, n2_min = h, n.dx * n.dx + n.dy * n.dy
    # any direction w that beats the best edge normal obeys |w| * h_min / |n_min| <= best width
    w0 = best[0]
    r2_num, r2_den = w0 * w0 * n2_min, h_min * h_min
    r = int((r2_num // r2_den) ** 0.5) + 2
    for dx in range(0, r + 1):
        for dy in range(-r, r + 1):
            if (dx == 0 and dy <= 0) or gcd(dx, dy) != 1:
                continue
            if (dx * dx + dy * dy) * r2_den > r2_num:
                continue
            cand = (width((dx, dy)), dx * dx + dy * dy, dx, dy)
            if cand < best:
                best = cand
    return best[0], LatticeVector(best[2], best[3])


def _canonical_direction(w) -> LatticeVector:
    dx, dy = w
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return LatticeVector(dx, dy)


def parse_polygon(data) -> LatticePolygon:
    """Parse ``{"dim": 2, "vertices": [[x, y], ...]}`` (dict or JSON text).

    The vertex list may come in any order but must be in convex position:
    a listed point strictly inside the hull, or in the relative interior
    of a hull edge, is rejected.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise PolygonFormatError("bad-json", str(exc)) from None
    if not isinstance(data, dict):
        raise PolygonFormatError("bad-shape", "polygon must be a JSON object")
    if data.get("dim", 2) != 2:
        raise PolygonFormatError("bad-dim", f"expected dim 2, got {data.get('dim')!r}")
    raw = data.get("vertices")
    if not isinstance(raw, list) or not raw:
        raise PolygonFormatError("bad-vertices", "vertices must be a nonempty list")
    pts = []
    for v in raw:
        if not isinstance(v, list) or len(v) != 2:
            raise PolygonFormatError("bad-vertex", f"vertex {v!r} is not a pair")
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in v):
            raise PolygonFormatError("non-integer", f"vertex {v!r} has non-integer coordinates")
        if abs(v[0]) > COORD_BOUND or abs(v[1]) > COORD_BOUND:
            raise PolygonFormatError("overflow", f"vertex {v!r} exceeds coordinate bound 2**20")
        pts.append(LatticePoint(v[0], v[1]))
    P = convex_hull(pts)
    corners = set(P.vertices)
    stray = [p for p in set(pts) if p not in corners]
    if stray:
        raise PolygonFormatError("non-convex", f"points {sorted(map(tuple, stray))} are not vertices of the hull")
    return P


def rational(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)
