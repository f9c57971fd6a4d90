"""Exact intersection of two lattice polygons and lattice-free classification.

Vertices of ``P & Q`` are rational in general.  Coordinates are kept as
``int`` while they stay integral and become :class:`fractions.Fraction`
only where a clip cuts an edge; public results always carry Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil, floor, gcd, lcm
from typing import NamedTuple, Optional, Union

from .fans import edge_with_normal
from .geometry import (
    Edge,
    GeometryError,
    LatticePoint,
    LatticePolygon,
    LatticeVector,
    cross,
    hull_vertices,
)


class Provenance(str, Enum):
    P = "P"
    Q = "Q"
    SHARED = "PQ"

    def matches(self, side: "Provenance") -> bool:
        return self is side or self is Provenance.SHARED


class RationalPoint(NamedTuple):
    x: Fraction
    y: Fraction

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _slim(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _integer_direction(tail, head) -> LatticeVector:
    dx, dy = _frac(head[0]) - _frac(tail[0]), _frac(head[1]) - _frac(tail[1])
    m = lcm(dx.denominator, dy.denominator)
    return LatticeVector(int(dx * m), int(dy * m)).primitive_part()


@dataclass(frozen=True)
class RationalEdge:
    tail: RationalPoint
    head: RationalPoint
    provenance: Provenance

    @property
    def direction(self) -> LatticeVector:
        """Primitive lattice vector parallel to the edge."""
        return _integer_direction(self.tail, self.head)

    @property
    def normal(self) -> LatticeVector:
        d = self.direction
        return LatticeVector(d.dy, -d.dx)

    def has_lattice_point(self) -> bool:
        return bool(rational_polygon_lattice_points(RationalPolygon((self.tail, self.head), ())))


@dataclass(frozen=True)
class RationalPolygon:
    """Convex polygon with rational vertices; edge ``i`` joins vertex ``i`` to ``i+1``.

    ``provenance[i]`` says which input polygon contributed edge ``i``; it
    is empty for rank 0.
    """

    vertices: tuple[RationalPoint, ...]
    provenance: tuple[Provenance, ...]

    @property
    def rank(self) -> int:
        return min(len(self.vertices) - 1, 2)

    @property
    def edges(self) -> tuple[RationalEdge, ...]:
        vs = self.vertices
        if len(vs) == 1:
            return ()
        tags = self.provenance or (None,) * len(vs)
        return tuple(RationalEdge(vs[i], vs[(i + 1) % len(vs)], tags[i]) for i in range(len(vs)))

    def contains(self, p) -> bool:
        vs = self.vertices
        if len(vs) == 1:
            return tuple(vs[0]) == (p[0], p[1])
        if len(vs) == 2:
            a, b = vs
            return (cross(a, b, p) == 0 and min(a.x, b.x) <= p[0] <= max(a.x, b.x)
                    and min(a.y, b.y) <= p[1] <= max(a.y, b.y))
        return all(cross(vs[i], vs[(i + 1) % len(vs)], p) >= 0 for i in range(len(vs)))

    @classmethod
    def from_lattice(cls, P: LatticePolygon, tag: Provenance = Provenance.P) -> RationalPolygon:
        vs = tuple(RationalPoint(Fraction(v.x), Fraction(v.y)) for v in P.vertices)
        return cls(vs, (tag,) * len(P.edges))

    def to_json(self) -> dict:
        return {
            "dim": 2,
            "vertices": [[str(v.x), str(v.y)] for v in self.vertices],
            "provenance": [t.value for t in self.provenance],
        }

    @classmethod
    def from_json(cls, data: dict) -> RationalPolygon:
        vs = tuple(RationalPoint(Fraction(x), Fraction(y)) for x, y in data["vertices"])
        tags = tuple(Provenance(t) for t in data.get("provenance", []))
        return cls(vs, tags)


EMPTY_JSON = {"dim": 2, "vertices": [], "provenance": []}


def _clip(cycle: list, a: int, b: int, c: int) -> list:
    """Sutherland-Hodgman step: keep the part of a convex cycle with ``a*x + b*y <= c``."""
    if len(cycle) == 1:
        p = cycle[0]
        return cycle if a * p[0] + b * p[1] <= c else []
    side = [a * p[0] + b * p[1] - c for p in cycle]
    if all(s <= 0 for s in side):
        return cycle
    out = []
    n = len(cycle)
    for i in range(n):
        p, q = cycle[i], cycle[(i + 1) % n]
        sp, sq = side[i], side[(i + 1) % n]
        if sp <= 0:
            out.append(p)
        if (sp < 0 < sq) or (sq < 0 < sp):
            t = _frac(sp) / (sp - sq)
            out.append((_slim(p[0] + t * (q[0] - p[0])), _slim(p[1] + t * (q[1] - p[1]))))
    return out


def _edge_lines(P: LatticePolygon) -> list[tuple[int, int, int]]:
    return [(e.normal.dx, e.normal.dy, e.normal.dot(e.tail)) for e in P.edges]


def _on_line(line, p) -> bool:
    a, b, c = line
    return a * p[0] + b * p[1] == c


def _provenance(tail, head, P: LatticePolygon, Q: LatticePolygon, oriented: bool) -> Provenance:
    if oriented:
        n = _integer_direction(tail, head)
        n = (n.dy, -n.dx)
    hits = []
    for src, tag in ((P, Provenance.P), (Q, Provenance.Q)):
        for line in _edge_lines(src):
            if oriented and (line[0], line[1]) != n:
                continue
            if _on_line(line, tail) and _on_line(line, head):
                hits.append(tag)
                break
    if len(hits) == 2:
        return Provenance.SHARED
    if not hits:
        raise GeometryError(f"edge {tail}->{head} lies on no edge of either polygon")
    return hits[0]


def intersect(P: LatticePolygon, Q: LatticePolygon) -> Optional[RationalPolygon]:
    """``P & Q`` as a provenanced rational polygon, or None when disjoint.

    ``P`` is clipped by the half-planes of ``Q`` one at a time.
    """
    cycle = list(P.vertices)
    for a, b, c in Q.halfplanes:
        cycle = _clip(cycle, a, b, c)
        if not cycle:
            return None
    verts = hull_vertices((_slim(x), _slim(y)) for x, y in cycle)
    n = len(verts)
    tags = []
    if n >= 2:
        for i in range(n):
            tags.append(_provenance(verts[i], verts[(i + 1) % n], P, Q, oriented=n >= 3))
    return RationalPolygon(tuple(RationalPoint(_frac(x), _frac(y)) for x, y in verts), tuple(tags))


def rational_polygon_lattice_points(Z: RationalPolygon) -> list[LatticePoint]:
    """Integer points of ``Z`` (boundary included), lexicographically sorted.

    Column scan: for each integer ``x`` the exact ``y`` range is the max of
    the lower-chain lines and the min of the upper-chain lines at ``x``.
    """
    vs = Z.vertices
    x_lo = ceil(min(v.x for v in vs))
    x_hi = floor(max(v.x for v in vs))
    lower, upper = [], []
    n = len(vs)
    if n == 2:
        pairs = [(vs[0], vs[1]), (vs[1], vs[0])]
    elif n > 2:
        pairs = [(vs[i], vs[(i + 1) % n]) for i in range(n)]
    else:
        pairs = []
    for p, q in pairs:
        if q.x > p.x:
            lower.append((p, q))
        elif q.x < p.x:
            upper.append((p, q))
    y_min = min(v.y for v in vs)
    y_max = max(v.y for v in vs)
    out = []
    for x in range(x_lo, x_hi + 1):
        lo, hi = y_min, y_max
        for p, q in lower:
            lo = max(lo, p.y + (x - p.x) * (q.y - p.y) / (q.x - p.x))
        for p, q in upper:
            hi = min(hi, p.y + (x - p.x) * (q.y - p.y) / (q.x - p.x))
        for y in range(ceil(lo), floor(hi) + 1):
            out.append(LatticePoint(x, y))
    return out


# --------------------------------------------------------------------------
# classification of lattice-free intersections


@dataclass(frozen=True)
class QuadCertificate:
    """The four edges of a lattice-free ``P & Q``, cyclically ``(eP1, fQ1, eP2, fQ2)``.

    ``opposite[i]`` is the edge of ``P`` whose outer normal is minus that of
    ``fQ{i+1}``, or None if ``P`` has no such edge.
    """

    edges: tuple[RationalEdge, RationalEdge, RationalEdge, RationalEdge]
    opposite: tuple[Optional[Edge], Optional[Edge]]

    def __post_init__(self):
        e = self.edges
        if len(e) != 4:
            raise GeometryError("certificate needs exactly four edges")
        if not (e[0].provenance.matches(Provenance.P) and e[2].provenance.matches(Provenance.P)
                and e[1].provenance.matches(Provenance.Q) and e[3].provenance.matches(Provenance.Q)):
            raise GeometryError("certificate edges do not alternate P, Q, P, Q")
        for f, fbar in zip((e[1], e[3]), self.opposite):
            if fbar is not None and fbar.normal != -f.normal:
                raise GeometryError("opposite edge is not antiparallel to its Q edge")

    @property
    def from_p(self) -> tuple[RationalEdge, RationalEdge]:
        return self.edges[0], self.edges[2]

    @property
    def from_q(self) -> tuple[RationalEdge, RationalEdge]:
        return self.edges[1], self.edges[3]

    def to_json(self) -> dict:
        def edge(e):
            return {"tail": [str(e.tail.x), str(e.tail.y)], "head": [str(e.head.x), str(e.head.y)],
                    "provenance": e.provenance.value, "normal": list(e.normal)}
        return {
            "edges": [edge(e) for e in self.edges],
            "opposite": [None if f is None else [list(f.tail), list(f.head)] for f in self.opposite],
        }


@dataclass(frozen=True)
class Empty:
    kind = "empty"


@dataclass(frozen=True)
class HasLatticePoint:
    point: LatticePoint
    region: RationalPolygon
    kind = "has-lattice-point"


@dataclass(frozen=True)
class LatticeFree:
    region: RationalPolygon
    certificate: QuadCertificate
    kind = "lattice-free"


@dataclass(frozen=True)
class LatticeFreeDegenerate:
    """Nonempty lattice-free intersection that is a point or a segment."""

    region: RationalPolygon
    kind = "lattice-free-degenerate"


@dataclass(frozen=True)
class Falsified:
    """A lattice-free 2-dimensional intersection that is not an alternating 4-gon."""

    region: RationalPolygon
    reason: str
    kind = "falsified"


Classification = Union[Empty, HasLatticePoint, LatticeFree, LatticeFreeDegenerate, Falsified]


def _quad_rotation(tags: tuple[Provenance, ...]) -> Optional[int]:
    fits = [r for r in range(4)
            if all(tags[(r + k) % 4].matches(Provenance.P if k % 2 == 0 else Provenance.Q) for k in range(4))]
    if not fits:
        return None
    strict = [r for r in fits if tags[r] is Provenance.P]
    return (strict or fits)[0]


def quad_certificate(Z: RationalPolygon, P: LatticePolygon) -> Optional[QuadCertificate]:
    if Z.rank < 2 or len(Z.vertices) != 4:
        return None
    r = _quad_rotation(Z.provenance)
    if r is None:
        return None
    edges = Z.edges
    ordered = tuple(edges[(r + k) % 4] for k in range(4))
    opposite = tuple(edge_with_normal(P, -f.normal) for f in (ordered[1], ordered[3]))
    return QuadCertificate(ordered, opposite)


def classify_intersection(P: LatticePolygon, Q: LatticePolygon) -> Classification:
    Z = intersect(P, Q)
    if Z is None:
        return Empty()
    pts = rational_polygon_lattice_points(Z)
    if pts:
        return HasLatticePoint(pts[0], Z)
    if Z.rank < 2:
        return LatticeFreeDegenerate(Z)
    n = len(Z.vertices)
    if n != 4:
        return Falsified(Z, f"lattice-free intersection has {n} edges")
    cert = quad_certificate(Z, P)
    if cert is None:
        tags = "".join(t.value if t is not Provenance.SHARED else "*" for t in Z.provenance)
        return Falsified(Z, f"edge provenance {tags} does not alternate")
    return LatticeFree(Z, cert)


def classification_json(result: Classification) -> dict:
    out: dict = {"kind": result.kind}
    if isinstance(result, HasLatticePoint):
        out["point"] = list(result.point)
    if isinstance(result, LatticeFree):
        out["certificate"] = result.certificate.to_json()
    if isinstance(result, Falsified):
        out["reason"] = result.reason
    if not isinstance(result, Empty):
        out["region"] = result.region.to_json()
    return out
