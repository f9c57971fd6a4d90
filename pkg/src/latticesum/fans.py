"""Normal fans of lattice polygons.

In the plane a complete fan is determined by its rays, and one fan
refines another exactly when it contains all of the other's rays.
A point's fan has no rays (one cone, the whole plane); a segment's fan
has the two rays ``n`` and ``-n`` perpendicular to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .geometry import Edge, GeometryError, LatticePolygon, LatticeVector, angle_key, det


@dataclass(frozen=True)
class NormalFan2D:
    rays: tuple[LatticeVector, ...]
    rank: int

    def __post_init__(self):
        if len(set(self.rays)) != len(self.rays):
            raise GeometryError("fan rays must be distinct")
        if any(not r.primitive for r in self.rays):
            raise GeometryError("fan rays must be primitive")

    def to_json(self) -> dict:
        return {"rays": [[r.dx, r.dy] for r in self.rays]}


def normal_fan(P: LatticePolygon) -> NormalFan2D:
    """Primitive outer edge normals of ``P``, by angle from ``(1, 0)``."""
    rays = sorted({e.normal for e in P.edges}, key=angle_key)
    return NormalFan2D(tuple(rays), P.rank)


def coarsens(fan_q: NormalFan2D, fan_p: NormalFan2D) -> bool:
    """True iff ``fan_p`` refines ``fan_q``."""
    return set(fan_q.rays) <= set(fan_p.rays)


def is_smooth(P: LatticePolygon) -> bool:
    """Adjacent primitive edge normals form a lattice basis at every vertex."""
    if P.rank < 2:
        raise GeometryError("smoothness is defined for 2-dimensional polygons")
    normals = [e.normal for e in P.edges]
    return all(abs(det(normals[i - 1], normals[i])) == 1 for i in range(len(normals)))


def edge_with_normal(P: LatticePolygon, n) -> Optional[Edge]:
    n = LatticeVector(*n)
    for e in P.edges:
        if e.normal == n:
            return e
    return None


def positively_spans(fan: NormalFan2D) -> bool:
    """True iff no closed half-plane through the origin contains every ray."""
    rays = fan.rays
    # every angular gap between consecutive rays must be strictly below pi
    return bool(rays) and all(det(rays[i], rays[(i + 1) % len(rays)]) > 0 for i in range(len(rays)))
