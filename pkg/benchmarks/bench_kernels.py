#!/usr/bin/env python3
"""Compare the numba kernels with their numpy fallbacks.

Times the row-span, sumset-gap and witness kernels on dilated random
polygons of growing size, then a short theorem campaign in two
subprocesses, one with LATTICESUM_DISABLE_NUMBA=1.

Usage:
    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --scales 1 4 16 --output bench.json
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from latticesum import _accel, kernels
from latticesum.geometry import dilate, lattice_points, minkowski_sum
from latticesum.generators import gen_polygon
from latticesum.rng import SplitMix64


def best_of(func, args, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_cases(scale):
    P = dilate(gen_polygon(SplitMix64(1), 10, 8), scale)
    Q = dilate(gen_polygon(SplitMix64(2), 10, 8), scale)
    S = minkowski_sum(P, Q)
    _, y0, _, y1 = S.bbox
    hp = np.array(S.halfplanes, dtype=np.int64)
    spans = (np.ascontiguousarray(hp[:, :2]), np.ascontiguousarray(hp[:, 2]), y0, y1)
    gaps = (*P.row_spans, *Q.row_spans, *S.row_spans)
    pts = lattice_points(S)
    zx = np.array([p.x for p in pts], dtype=np.int64)
    zy = np.array([p.y for p in pts], dtype=np.int64)
    wit = (*P.row_spans, *Q.row_spans, zx, zy)
    return len(pts), {"row_spans": spans, "sumset_gaps": gaps, "lex_witnesses": wit}


def bench_kernels(scales, repeat):
    rows = []
    for scale in scales:
        npts, cases = kernel_cases(scale)
        for name, args in cases.items():
            row = {"kernel": name, "scale": scale, "sum_points": npts}
            row["numpy_s"] = best_of(getattr(kernels, f"{name}_numpy"), args, repeat)
            if _accel.NUMBA_AVAILABLE:
                fast = getattr(kernels, f"{name}_numba")
                fast(*args)  # compile
                row["numba_s"] = best_of(fast, args, repeat)
                row["speedup"] = row["numpy_s"] / row["numba_s"] if row["numba_s"] else None
            rows.append(row)
            print(f"{name:14s} scale {scale:3d} points {npts:8d}  numpy {row['numpy_s'] * 1e3:9.3f} ms"
                  + (f"  numba {row['numba_s'] * 1e3:9.3f} ms  x{row['speedup']:.1f}" if "numba_s" in row else ""))
    return rows


CAMPAIGN = (
    "import json, time; from latticesum import kernels;"
    "from latticesum.campaign import CampaignConfig, run_campaign;"
    "run_campaign(CampaignConfig(seed=0, trials=5, bound={bound}));"
    "t = time.perf_counter();"
    "r = run_campaign(CampaignConfig(seed=1, trials={trials}, bound={bound}));"
    "print(json.dumps({{'backend': kernels.BACKEND, 'seconds': time.perf_counter() - t, 'passed': r.passed}}))"
)


def bench_campaign(trials, bound):
    out = {}
    for disable in (False, True):
        env = dict(os.environ)
        env.pop("LATTICESUM_DISABLE_NUMBA", None)
        if disable:
            env["LATTICESUM_DISABLE_NUMBA"] = "1"
        code = CAMPAIGN.format(trials=trials, bound=bound)
        res = json.loads(subprocess.run([sys.executable, "-c", code], env=env, check=True,
                                        capture_output=True, text=True).stdout)
        out[res["backend"]] = res
        print(f"campaign {res['backend']:5s}: {trials} trials at bound {bound} in {res['seconds']:.2f} s")
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--scales", type=int, nargs="+", default=[1, 4, 16, 64])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--bound", type=int, default=25)
    parser.add_argument("--output", help="write results as JSON")
    args = parser.parse_args()

    results = {
        "numba_available": _accel.NUMBA_AVAILABLE,
        "kernels": bench_kernels(args.scales, args.repeat),
        "campaign": bench_campaign(args.trials, args.bound),
    }
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
