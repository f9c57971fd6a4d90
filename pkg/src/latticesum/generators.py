"""Random instance generators for verification campaigns."""

from __future__ import annotations

from itertools import combinations
from math import gcd

from .fans import coarsens, normal_fan
from .geometry import (
    GeometryError,
    LatticePoint,
    LatticePolygon,
    convex_hull,
    det,
    dilate,
    minkowski_sum,
    point_polygon,
    translate,
)
from .rng import SplitMix64

STRATEGIES = ("dilate", "summands", "rejection")


class GenerationError(RuntimeError):
    pass


def gen_polygon(rng: SplitMix64, bound: int, max_vertices: int, max_tries: int = 100) -> LatticePolygon:
    """Hull of ``k`` uniform points of ``[-bound, bound]^2``, ``3 <= k <= max_vertices``.

    Resamples until the hull is 2-dimensional.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    for _ in range(max_tries):
        k = rng.randint(3, max(3, max_vertices))
        pts = [(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(k)]
        P = convex_hull(pts)
        if P.rank == 2:
            return P
    raise GenerationError(f"no 2-dimensional polygon after {max_tries} draws")


def gen_segment(rng: SplitMix64, bound: int) -> LatticePolygon:
    while True:
        a = (rng.randint(-bound, bound), rng.randint(-bound, bound))
        b = (rng.randint(-bound, bound), rng.randint(-bound, bound))
        if a != b:
            return convex_hull([a, b])


def zonogon(vectors) -> LatticePolygon:
    """Minkowski sum of the segments ``[0, v]``."""
    Z = point_polygon(0, 0)
    for v in vectors:
        Z = minkowski_sum(Z, convex_hull([(0, 0), tuple(v)]))
    return Z


def fan_summands(P: LatticePolygon, cap: int) -> list[LatticePolygon]:
    """Small polygons whose edge normals are all edge normals of ``P``.

    Segments along directions where ``P`` has two antiparallel edges, and
    triangles on positively spanning triples of edge directions of ``P``
    (sides proportional to the integer relation among the three).
    Anything wider than ``cap`` in a coordinate is dropped.
    """
    dirs = [e.direction.primitive_part() for e in P.edges]
    out = []
    have = set(dirs)
    for u in dirs:
        if -u in have and (u.dx > 0 or (u.dx == 0 and u.dy > 0)):
            out.append(convex_hull([(0, 0), tuple(u)]))
    for u, v, w in combinations(dirs, 3):
        a, b, c = det(v, w), det(w, u), det(u, v)
        if a <= 0 or b <= 0 or c <= 0:
            continue
        g = gcd(a, gcd(b, c))
        a, b, c = a // g, b // g, c // g
        p1 = (a * u.dx, a * u.dy)
        p2 = (p1[0] + b * v.dx, p1[1] + b * v.dy)
        if max(abs(p1[0]), abs(p1[1]), abs(p2[0]), abs(p2[1])) > cap:
            continue
        out.append(convex_hull([(0, 0), p1, p2]))
    return out


def _random_translate(rng: SplitMix64, Q: LatticePolygon, bound: int) -> LatticePolygon:
    return translate(Q, (rng.randint(-bound, bound), rng.randint(-bound, bound)))


def gen_coarsening_pair(rng: SplitMix64, bound: int, max_vertices: int = 12,
                        strategy: str | None = None, max_rejections: int = 30):
    """``(P, Q, strategy)`` with the normal fan of ``Q`` coarsened by that of ``P``.

    Strategies: ``dilate`` (``Q = kP``, ``k`` in 1..4), ``summands``
    (random sum of :func:`fan_summands` blocks, redrawing ``P`` while it
    has none), ``rejection`` (small
    random ``Q`` kept only if it passes; falls back to ``dilate``).
    ``Q`` is finally translated by a random vector.
    """
    P = gen_polygon(rng, bound, max_vertices)
    if strategy is None:
        strategy = STRATEGIES[rng.below(len(STRATEGIES))]
    Q = None
    if strategy == "summands":
        blocks = fan_summands(P, cap=4 * bound)
        for _ in range(max_rejections):
            if blocks:
                break
            P = gen_polygon(rng, bound, max_vertices)
            blocks = fan_summands(P, cap=4 * bound)
        if blocks:
            Q = point_polygon(0, 0)
            for _ in range(rng.randint(1, 3)):
                Q = minkowski_sum(Q, dilate(rng.choice(blocks), rng.randint(1, 2)))
        else:
            strategy = "dilate"
    elif strategy == "rejection":
        fan_p = normal_fan(P)
        small = max(1, min(bound, 3))
        for _ in range(max_rejections):
            pts = [(rng.randint(-small, small), rng.randint(-small, small)) for _ in range(rng.randint(2, 4))]
            cand = convex_hull(pts)
            if cand.rank >= 1 and coarsens(normal_fan(cand), fan_p):
                Q = cand
                break
        else:
            strategy = "dilate"
    if Q is None:
        if strategy != "dilate":
            raise ValueError(f"unknown strategy {strategy!r}")
        Q = dilate(P, rng.randint(1, 4))
    Q = _random_translate(rng, Q, bound)
    if not coarsens(normal_fan(Q), normal_fan(P)):
        raise GenerationError("generated pair violates the fan hypothesis")
    return P, Q, strategy


def gen_random_pair(rng: SplitMix64, bound: int, max_vertices: int):
    """Unconstrained pair; a quarter of the time ``Q`` is a segment."""
    P = gen_polygon(rng, bound, max_vertices)
    if rng.below(4) == 0:
        Q = gen_segment(rng, bound)
    else:
        Q = gen_polygon(rng, bound, max_vertices)
    return P, Q


def gen_overlap_pair(rng: SplitMix64, bound: int, max_vertices: int):
    """Pair of small polygons, ``Q`` shifted so the two tend to just touch.

    Used to sample lattice-free intersections by rejection.
    """
    P = gen_polygon(rng, bound, max_vertices)
    Q = gen_polygon(rng, bound, max_vertices)
    return P, _random_translate(rng, Q, bound)
