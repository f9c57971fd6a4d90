"""Command-line interface.

Polygon arguments are a JSON file path, ``-`` for stdin, or inline JSON
such as ``'{"dim": 2, "vertices": [[0,0],[1,0],[0,1]]}'``.  Results go to
stdout as JSON.

Exit codes: 0 success / surjective / verified / true, 1 gap / falsified /
false / not found, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import kernels
from .campaign import (
    MODES,
    CampaignConfig,
    GapNotFound,
    find_gap_example,
    iter_gap_examples,
    replay_instance,
    run_campaign,
)
from .decomp import (
    decompose,
    howard_check,
    outcome_json,
    sumset_check,
    verify_3d_counterexample,
    verify_reformulated,
)
from .fans import coarsens, is_smooth, normal_fan
from .geometry import (
    GeometryError,
    PolygonFormatError,
    lattice_points,
    lattice_width,
    minkowski_sum,
    negate,
    non_vertex_lattice_points,
    parse_polygon,
    translate,
)
from .intersect import EMPTY_JSON, classification_json, classify_intersection, intersect
from .svg import Item, gap_scene, quad_scene, render_svg

OK, FAIL, INVALID = 0, 1, 2


class InputError(Exception):
    pass


def _load_json(arg: str):
    text = arg
    if arg == "-":
        text = sys.stdin.read()
    elif not arg.lstrip().startswith(("{", "[")):
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {arg}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {arg!r}: {exc}") from None


def _polygon(arg: str):
    return parse_polygon(_load_json(arg))


def _emit(obj) -> None:
    print(json.dumps(obj))


def cmd_lattice_points(args):
    P = _polygon(args.P)
    pts = non_vertex_lattice_points(P) if args.non_vertex else lattice_points(P)
    _emit({"count": len(pts), "points": [list(p) for p in pts]})
    return OK


def cmd_minkowski(args):
    _emit(minkowski_sum(_polygon(args.P), _polygon(args.Q)).to_json())
    return OK


def cmd_intersect(args):
    Z = intersect(_polygon(args.P), _polygon(args.Q))
    _emit(EMPTY_JSON if Z is None else Z.to_json())
    return OK


def cmd_classify(args):
    res = classify_intersection(_polygon(args.P), _polygon(args.Q))
    _emit(classification_json(res))
    return FAIL if res.kind == "falsified" else OK


def cmd_normal_fan(args):
    _emit(normal_fan(_polygon(args.P)).to_json())
    return OK


def cmd_coarsens(args):
    result = coarsens(normal_fan(_polygon(args.Q)), normal_fan(_polygon(args.P)))
    _emit({"coarsens": result})
    return OK if result else FAIL


def cmd_smooth(args):
    result = is_smooth(_polygon(args.P))
    _emit({"smooth": result})
    return OK if result else FAIL


def cmd_lattice_width(args):
    width, direction = lattice_width(_polygon(args.P))
    _emit({"width": width, "direction": list(direction)})
    return OK


def cmd_sumset_check(args):
    P, Q = _polygon(args.P), _polygon(args.Q)
    check = howard_check if args.method == "howard" else sumset_check
    rep = check(P, Q, witnesses=args.witnesses)
    _emit(rep.to_json(with_witnesses=args.witnesses))
    return OK if rep.surjective else FAIL


def cmd_decompose(args):
    P, Q = _polygon(args.P), _polygon(args.Q)
    z = tuple(args.z)
    w = decompose(z, P, Q)
    if w is None:
        _emit({"z": list(z), "gap": True})
        return FAIL
    _emit({"z": list(z), "gap": False, "x": list(w[0]), "y": list(w[1])})
    return OK


def cmd_verify_reformulated(args):
    res = verify_reformulated(_polygon(args.P), _polygon(args.Q))
    _emit(outcome_json(res))
    return FAIL if res.kind == "falsified" else OK


def cmd_verify_3d(args):
    rep = verify_3d_counterexample()
    _emit(rep.to_json())
    return OK if rep.passed else FAIL


def cmd_campaign(args):
    try:
        config = CampaignConfig(seed=args.seed, trials=args.trials, bound=args.bound,
                                max_vertices=args.max_vertices, mode=args.mode)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = run_campaign(config, dump_dir=args.dump_dir)
    text = report.dumps(include_timing=not args.no_timing)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    print(f"backend={kernels.BACKEND} trials={report.trials} applicable={report.applicable} "
          f"failures={len(report.failures)}", file=sys.stderr)
    return OK if report.passed else FAIL


def cmd_replay(args):
    status, tag, detail = replay_instance(_load_json(args.file))
    _emit({"status": status, "tag": tag, "detail": detail})
    return FAIL if status == "fail" else OK


def cmd_find_gap(args):
    try:
        ex = find_gap_example(args.bound, args.max_vertices)
    except GapNotFound as exc:
        _emit({"found": False, "message": str(exc)})
        return FAIL
    _emit({"found": True, **ex.to_json()})
    return OK


def _scene_from_json(data) -> list:
    items = []
    for raw in data.get("items", []):
        if "polygon" in raw:
            shape = parse_polygon(raw["polygon"])
        elif "point" in raw:
            shape = tuple(raw["point"])
        else:
            raise InputError(f"scene item {raw!r} needs 'polygon' or 'point'")
        items.append(Item(shape, raw.get("label", ""), raw.get("color")))
    return items


def cmd_render(args):
    if args.scene:
        scene = _scene_from_json(_load_json(args.scene))
    elif args.quad:
        for ex in iter_gap_examples(args.bound, args.max_vertices):
            Z = intersect(ex.P, translate(negate(ex.Q), ex.gap))
            if Z is not None and Z.rank == 2:
                scene = quad_scene(ex.P, ex.Q, ex.gap)
                break
        else:
            _emit({"found": False})
            return FAIL
    else:
        try:
            ex = find_gap_example(args.bound, args.max_vertices)
        except GapNotFound as exc:
            _emit({"found": False, "message": str(exc)})
            return FAIL
        # move the gap to the origin so that it is witnessed by P & -Q
        P = translate(ex.P, (-ex.gap[0], -ex.gap[1]))
        scene = gap_scene(P, ex.Q, (0, 0))
    if not scene:
        raise InputError("scene is empty")
    svg = render_svg(scene)
    with open(args.out, "w") as fh:
        fh.write(svg)
    _emit({"out": args.out, "items": [it.label for it in scene]})
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latticesum", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *polys, help=None):
        p = sub.add_parser(name, help=help)
        for arg in polys:
            p.add_argument(arg, help=f"polygon {arg} (file, '-', or inline JSON)")
        p.set_defaults(func=func)
        return p

    p = add("lattice-points", cmd_lattice_points, "P", help="lattice points of a polygon")
    p.add_argument("--non-vertex", action="store_true", help="omit the vertices")
    add("minkowski", cmd_minkowski, "P", "Q", help="Minkowski sum")
    add("intersect", cmd_intersect, "P", "Q", help="exact intersection with edge provenance")
    add("classify", cmd_classify, "P", "Q", help="classify P & Q (empty / lattice point / lattice-free 4-gon)")
    add("normal-fan", cmd_normal_fan, "P", help="rays of the normal fan")
    add("coarsens", cmd_coarsens, "Q", "P", help="does the fan of Q coarsen the fan of P")
    add("smooth", cmd_smooth, "P", help="smoothness test")
    add("lattice-width", cmd_lattice_width, "P", help="lattice width and direction")
    p = add("sumset-check", cmd_sumset_check, "P", "Q", help="gaps of the addition map")
    p.add_argument("--method", choices=("brute", "howard"), default="brute")
    p.add_argument("--witnesses", action="store_true", help="include a decomposition for every point")
    p = add("decompose", cmd_decompose, "P", "Q", help="write z as x + y")
    p.add_argument("--z", nargs=2, type=int, required=True, metavar=("X", "Y"))
    add("verify-reformulated", cmd_verify_reformulated, "P", "Q",
        help="lattice point in P & Q when the fan of -Q coarsens the fan of P")
    add("verify-3d", cmd_verify_3d, help="volume-two simplex counterexample")

    p = add("campaign", cmd_campaign, help="seeded randomized verification campaign")
    p.add_argument("--mode", choices=MODES, default="theorem")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--bound", type=int, default=25)
    p.add_argument("--max-vertices", type=int, default=12)
    p.add_argument("--out", help="also write the report here")
    p.add_argument("--dump-dir", default=None, help="write a reproduction file per failure")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock fields")

    p = add("replay", cmd_replay, help="re-run a dumped reproduction file")
    p.add_argument("file")

    p = add("find-gap", cmd_find_gap, help="smallest non-surjective pair in [0, bound]^2")
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--max-vertices", type=int, default=4)

    p = add("render", cmd_render, help="render a scene to SVG")
    p.add_argument("--out", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--scene", help="scene JSON: {\"items\": [{\"polygon\"|\"point\": ..., \"label\": ...}]}")
    group.add_argument("--quad", action="store_true", help="lattice-free 4-gon P & (z - Q) at a gap z")
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--max-vertices", type=int, default=4)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PolygonFormatError as exc:
        _emit(exc.to_dict())
    except (InputError, GeometryError, KeyError, TypeError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
    return INVALID


if __name__ == "__main__":
    sys.exit(main())
