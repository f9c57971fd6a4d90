"""Seeded verification campaigns and the exhaustive gap search."""

from __future__ import annotations

import json
import os
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations, product
from typing import Iterator, Optional

from .decomp import Falsified as ReformFalsified
from .decomp import NotApplicable, howard_check, sumset_check, verify_reformulated
from .fans import coarsens, normal_fan
from .generators import gen_coarsening_pair, gen_overlap_pair, gen_polygon, gen_random_pair
from .geometry import (
    COORD_BOUND,
    LatticePolygon,
    area2,
    boundary_count,
    convex_hull,
    lattice_points,
    minkowski_sum,
    negate,
    parse_polygon,
    translate,
)
from .intersect import Falsified, LatticeFree, classify_intersection
from .rng import SplitMix64

MODES = ("theorem", "prop2", "howard-equiv", "minkowski-oracle", "pick", "reformulated")


@dataclass(frozen=True)
class CampaignConfig:
    seed: int
    trials: int
    bound: int = 25
    max_vertices: int = 12
    mode: str = "theorem"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        # generated polygons are dilated by up to 4 and summed
        if not 1 <= self.bound <= COORD_BOUND // 16:
            raise ValueError(f"bound must lie in [1, {COORD_BOUND // 16}]")
        if self.max_vertices < 3:
            raise ValueError("max_vertices must be at least 3")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class CampaignReport:
    config: CampaignConfig
    trials: int = 0
    applicable: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    duration_s: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, include_timing: bool = True) -> dict:
        out = {
            "config": asdict(self.config),
            "trials": self.trials,
            "applicable": self.applicable,
            "skipped": self.skipped,
            "failures": sorted(self.failures, key=lambda f: f["trial"]),
            "stats": dict(sorted(self.stats.items())),
            "passed": self.passed,
        }
        if include_timing:
            out["duration_s"] = round(self.duration_s, 3)
        return out

    def dumps(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_json(include_timing), sort_keys=True, indent=2)


# --------------------------------------------------------------------------
# per-instance checks: each returns (status, tag, detail) with status in ok/skip/fail


def _check_theorem(P, Q):
    if not coarsens(normal_fan(Q), normal_fan(P)):
        return "skip", "hypothesis-fails", None
    rep = sumset_check(P, Q, witnesses=False)
    if rep.surjective:
        return "ok", "surjective", None
    return "fail", "gap", {"gaps": [list(z) for z in rep.gap_points[:20]]}


def _check_prop2(P, Q):
    res = classify_intersection(P, Q)
    if isinstance(res, LatticeFree):
        return "ok", res.kind, None
    if isinstance(res, Falsified):
        return "fail", res.kind, {"reason": res.reason, "region": res.region.to_json()}
    return "skip", res.kind, None


def _check_howard(P, Q):
    brute = sumset_check(P, Q, witnesses=False)
    crit = howard_check(P, Q, witnesses=False)
    tag = "surjective" if brute.surjective else "gap"
    if brute.surjective == crit.surjective and brute.gap_points == crit.gap_points:
        return "ok", tag, None
    return "fail", "disagree", {"brute": brute.to_json(), "howard": crit.to_json()}


def _check_minkowski(P, Q):
    S = minkowski_sum(P, Q)
    H = convex_hull(p + q for p in P.vertices for q in Q.vertices)
    normals_ok = {e.normal for e in S.edges} == {e.normal for e in P.edges} | {e.normal for e in Q.edges}
    if S == H and normals_ok:
        return "ok", f"rank{S.rank}", None
    return "fail", "minkowski", {"merge": S.to_json(), "hull": H.to_json(), "normals_ok": normals_ok}


def bbox_lattice_points(P: LatticePolygon) -> list:
    x0, y0, x1, y1 = P.bbox
    return [(x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1) if P.contains((x, y))]


def _check_pick(P, Q=None):
    pts = lattice_points(P)
    b = boundary_count(P)
    interior = len(pts) - b
    pick_ok = area2(P) == 2 * interior + b - 2
    scan_ok = [tuple(p) for p in pts] == bbox_lattice_points(P)
    if pick_ok and scan_ok:
        return "ok", "pick", None
    return "fail", "pick", {"pick_ok": pick_ok, "scan_ok": scan_ok, "area2": area2(P), "points": len(pts)}


def _check_reformulated(P, Q):
    res = verify_reformulated(P, Q)
    if isinstance(res, NotApplicable):
        return "skip", "not-applicable", None
    if isinstance(res, ReformFalsified):
        return "fail", res.kind, res.to_json()
    return "ok", res.kind, None


CHECKS = {
    "theorem": _check_theorem,
    "prop2": _check_prop2,
    "howard-equiv": _check_howard,
    "minkowski-oracle": _check_minkowski,
    "pick": _check_pick,
    "reformulated": _check_reformulated,
}


def generate_instance(config: CampaignConfig, trial: int):
    """``(P, Q, tag)`` for one trial; ``Q`` is None in pick mode."""
    rng = SplitMix64.for_trial(config.seed, trial)
    b, mv = config.bound, config.max_vertices
    if config.mode == "theorem":
        return gen_coarsening_pair(rng, b, mv)
    if config.mode == "prop2":
        return (*gen_overlap_pair(rng, b, mv), None)
    if config.mode in ("howard-equiv", "minkowski-oracle"):
        return (*gen_random_pair(rng, b, mv), None)
    if config.mode == "pick":
        return gen_polygon(rng, b, mv), None, None
    P, Q, strategy = gen_coarsening_pair(rng, b, mv)
    Q = negate(Q)
    # land a random vertex of Q on a random point of P's bounding box
    x0, y0, x1, y1 = P.bbox
    target = (rng.randint(x0, x1), rng.randint(y0, y1))
    v = rng.choice(Q.vertices)
    return P, translate(Q, (target[0] - v.x, target[1] - v.y)), strategy


def check_instance(mode: str, P: LatticePolygon, Q: Optional[LatticePolygon]):
    try:
        return CHECKS[mode](P, Q)
    except Exception as exc:  # a crash on an instance is a failure, not an abort
        return "fail", "exception", {"error": f"{type(exc).__name__}: {exc}"}


def instance_json(mode: str, seed: int, trial: int, P, Q, detail=None) -> dict:
    out = {"mode": mode, "seed": seed, "trial": trial, "P": P.to_json()}
    if Q is not None:
        out["Q"] = Q.to_json()
    if detail is not None:
        out["detail"] = detail
    return out


def replay_instance(data: dict):
    """Re-run a dumped instance; returns ``(status, tag, detail)``."""
    P = parse_polygon(data["P"])
    Q = parse_polygon(data["Q"]) if "Q" in data else None
    return check_instance(data["mode"], P, Q)


def run_campaign(config: CampaignConfig, dump_dir: Optional[str] = None) -> CampaignReport:
    report = CampaignReport(config)
    start = time.perf_counter()
    for trial in range(config.trials):
        try:
            P, Q, gen_tag = generate_instance(config, trial)
        except Exception as exc:
            report.failures.append({"trial": trial, "detail": {"error": f"generation: {exc}"}})
            continue
        status, tag, detail = check_instance(config.mode, P, Q)
        report.trials += 1
        key = f"{gen_tag}:{tag}" if gen_tag else tag
        report.stats[key] = report.stats.get(key, 0) + 1
        if status == "skip":
            report.skipped += 1
            continue
        report.applicable += 1
        if status == "fail":
            inst = instance_json(config.mode, config.seed, trial, P, Q, detail)
            report.failures.append(inst)
            if dump_dir is not None:
                os.makedirs(dump_dir, exist_ok=True)
                path = os.path.join(dump_dir, f"repro_{config.mode}_{config.seed}_{trial}.json")
                with open(path, "w") as fh:
                    json.dump(inst, fh, sort_keys=True, indent=2)
    report.duration_s = time.perf_counter() - start
    return report


# --------------------------------------------------------------------------
# exhaustive search for gaps among small polygons


class GapNotFound(LookupError):
    pass


@dataclass(frozen=True)
class GapExample:
    P: LatticePolygon
    Q: LatticePolygon
    gap: tuple
    gaps: tuple
    q_coarsens_p: bool
    p_coarsens_q: bool
    howard_gaps: tuple

    @property
    def consistent(self) -> bool:
        """No fan coarsening either way, and both gap searches agree."""
        return not self.q_coarsens_p and not self.p_coarsens_q and self.gaps == self.howard_gaps

    def to_json(self) -> dict:
        return {
            "P": self.P.to_json(),
            "Q": self.Q.to_json(),
            "gap": list(self.gap),
            "gaps": [list(z) for z in self.gaps],
            "coarsens": {"Q_by_P": self.q_coarsens_p, "P_by_Q": self.p_coarsens_q},
            "howard_gaps": [list(z) for z in self.howard_gaps],
        }


def enumerate_polygons(bound: int, max_vertices: int = 4) -> list[LatticePolygon]:
    """Distinct hulls of at most ``max_vertices`` points of ``[0, bound]^2``.

    Translations make the box ``[0, bound]^2`` no loss of generality.
    Ordered by number of lattice points, then twice the area, then vertices.
    """
    grid = list(product(range(bound + 1), repeat=2))
    seen = set()
    for k in range(1, max_vertices + 1):
        for pts in combinations(grid, k):
            seen.add(convex_hull(pts))
    return sorted(seen, key=lambda P: (len(lattice_points(P)), area2(P), P.vertices))


def iter_gap_examples(bound: int, max_vertices: int = 4) -> Iterator[GapExample]:
    """Non-surjective pairs in enumeration order (unordered, ``i <= j``, by ``i + j``)."""
    polys = enumerate_polygons(bound, max_vertices)
    n = len(polys)
    for s in range(2 * n - 1):
        for i in range(max(0, s - n + 1), s // 2 + 1):
            P, Q = polys[i], polys[s - i]
            rep = sumset_check(P, Q, witnesses=False)
            if rep.surjective:
                continue
            yield GapExample(
                P, Q, rep.gap_points[0], rep.gap_points,
                coarsens(normal_fan(Q), normal_fan(P)),
                coarsens(normal_fan(P), normal_fan(Q)),
                howard_check(P, Q, witnesses=False).gap_points,
            )


def find_gap_example(bound: int, max_vertices: int = 4) -> GapExample:
    if bound < 1:
        raise ValueError("bound must be positive")
    for ex in iter_gap_examples(bound, max_vertices):
        return ex
    raise GapNotFound(f"every pair of lattice polygons in [0, {bound}]^2 is surjective")
