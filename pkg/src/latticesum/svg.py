"""Deterministic SVG rendering of small lattice scenes.

Output depends only on the scene: no timestamps, no ids, fixed float
formatting.  Golden files can be compared byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Optional, Sequence, Union
from xml.sax.saxutils import escape

from .geometry import LatticePolygon, minkowski_sum, negate, translate
from .intersect import Provenance, RationalPolygon, intersect

UNIT = 40
PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")
PROVENANCE_COLORS = {Provenance.P: "#d62728", Provenance.Q: "#1f77b4", Provenance.SHARED: "#9467bd"}


@dataclass(frozen=True)
class Item:
    shape: Union[LatticePolygon, RationalPolygon, tuple]
    label: str = ""
    color: Optional[str] = None
    provenance_edges: bool = False

    @property
    def points(self) -> list[tuple]:
        if isinstance(self.shape, (LatticePolygon, RationalPolygon)):
            return [tuple(v) for v in self.shape.vertices]
        return [tuple(self.shape)]


def _fmt(v) -> str:
    s = f"{float(v):.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(scene: Sequence[Item]) -> str:
    if not scene:
        raise ValueError("cannot render an empty scene")
    pts = [p for item in scene for p in item.points]
    x0 = floor(min(p[0] for p in pts)) - 1
    x1 = ceil(max(p[0] for p in pts)) + 1
    y0 = floor(min(p[1] for p in pts)) - 1
    y1 = ceil(max(p[1] for p in pts)) + 1

    def sx(x) -> str:
        return _fmt((Fraction(x) - x0) * UNIT)

    def sy(y) -> str:
        return _fmt((y1 - Fraction(y)) * UNIT)

    width, height = (x1 - x0) * UNIT, (y1 - y0) * UNIT
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        '<g stroke="#dddddd" stroke-width="1">',
    ]
    for x in range(x0, x1 + 1):
        out.append(f'<line x1="{sx(x)}" y1="0" x2="{sx(x)}" y2="{height}"/>')
    for y in range(y0, y1 + 1):
        out.append(f'<line x1="0" y1="{sy(y)}" x2="{width}" y2="{sy(y)}"/>')
    out.append("</g>")
    out.append('<g fill="#999999">')
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="2"/>')
    out.append("</g>")
    if x0 <= 0 <= x1 and y0 <= 0 <= y1:
        out.append(f'<g stroke="#888888" stroke-width="1.5"><line x1="{sx(0)}" y1="0" x2="{sx(0)}" y2="{height}"/>'
                   f'<line x1="0" y1="{sy(0)}" x2="{width}" y2="{sy(0)}"/></g>')

    for k, item in enumerate(scene):
        color = item.color or PALETTE[k % len(PALETTE)]
        vs = item.points
        label = escape(item.label)
        if len(vs) == 1:
            x, y = vs[0]
            out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="5" fill="{color}" stroke="#000000" stroke-width="1"/>')
            lx, ly = Fraction(x), Fraction(y)
            shift = 'dx="8" dy="16"'
        else:
            shift = 'dx="6" dy="-6"'
            coords = " ".join(f"{sx(x)},{sy(y)}" for x, y in vs)
            if len(vs) == 2:
                out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="3"/>')
            else:
                out.append(f'<polygon points="{coords}" fill="{color}" fill-opacity="0.25" '
                           f'stroke="{color}" stroke-width="2"/>')
            if item.provenance_edges and isinstance(item.shape, RationalPolygon):
                for e in item.shape.edges:
                    c = PROVENANCE_COLORS[e.provenance]
                    out.append(f'<line x1="{sx(e.tail.x)}" y1="{sy(e.tail.y)}" x2="{sx(e.head.x)}" '
                               f'y2="{sy(e.head.y)}" stroke="{c}" stroke-width="4" '
                               f'data-provenance="{e.provenance.value}"/>')
            if len(vs) == 2:
                # three quarters along, so crossing segments keep their labels apart
                (ax, ay), (bx, by) = vs
                lx = Fraction(ax) + Fraction(3, 4) * (Fraction(bx) - Fraction(ax))
                ly = Fraction(ay) + Fraction(3, 4) * (Fraction(by) - Fraction(ay))
            else:
                lx = sum(Fraction(p[0]) for p in vs) / len(vs)
                ly = sum(Fraction(p[1]) for p in vs) / len(vs)
        if label:
            out.append(f'<text x="{sx(lx)}" y="{sy(ly)}" {shift} font-family="sans-serif" '
                       f'font-size="14" fill="#000000">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def gap_scene(P: LatticePolygon, Q: LatticePolygon, gap) -> list[Item]:
    """``P``, ``Q``, ``-Q``, ``P + Q`` and a gap point of the sumset."""
    return [
        Item(minkowski_sum(P, Q), "P+Q", "#bbbbbb"),
        Item(P, "P", "#d62728"),
        Item(Q, "Q", "#1f77b4"),
        Item(negate(Q), "-Q", "#2ca02c"),
        Item(tuple(gap), f"gap ({gap[0]}, {gap[1]})", "#000000"),
    ]


def quad_scene(P: LatticePolygon, Q: LatticePolygon, z=(0, 0)) -> list[Item]:
    """``P``, ``z - Q`` and their intersection with edges colored by source."""
    shifted = translate(negate(Q), z)
    scene = [Item(P, "P", "#d62728"), Item(shifted, "z-Q", "#1f77b4")]
    region = intersect(P, shifted)
    if region is not None:
        scene.append(Item(region, "Z", "#ffd700", provenance_edges=True))
    return scene
