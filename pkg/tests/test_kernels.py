import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given

from conftest import polygons
from latticesum import _accel, kernels
from latticesum.geometry import convex_hull, minkowski_sum, segment
from oracles import bbox_scan, naive_gaps, pairwise_sumset

needs_numba = pytest.mark.skipif(not _accel.NUMBA_AVAILABLE, reason="numba not installed")


def _spans(P):
    _, y0, _, y1 = P.bbox
    hp = np.array(P.halfplanes, dtype=np.int64)
    return np.ascontiguousarray(hp[:, :2]), np.ascontiguousarray(hp[:, 2]), y0, y1


def _points_from_spans(y0, lo, hi):
    return sorted((x, y0 + i) for i in range(lo.size) for x in range(int(lo[i]), int(hi[i]) + 1))


@given(polygons)
def test_numpy_row_spans_match_bbox_scan(P):
    normals, offsets, y0, y1 = _spans(P)
    lo, hi = kernels.row_spans_numpy(normals, offsets, y0, y1)
    assert _points_from_spans(y0, lo, hi) == bbox_scan(P)


@needs_numba
@given(polygons)
def test_row_span_backends_agree(P):
    args = _spans(P)
    a = kernels.row_spans_numba(*args)
    b = kernels.row_spans_numpy(*args)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_infeasible_rows_are_empty():
    # y <= 0 and -y <= -1 leave no row
    normals = np.array([[0, 1], [0, -1]], dtype=np.int64)
    offsets = np.array([0, -1], dtype=np.int64)
    for f in (kernels.row_spans_numpy, kernels.row_spans_numba):
        lo, hi = f(normals, offsets, 0, 1)
        assert (lo > hi).all()


def _gap_args(P, Q):
    S = minkowski_sum(P, Q)
    return (*P.row_spans, *Q.row_spans, *S.row_spans)


@given(polygons, polygons)
def test_numpy_sumset_gaps_match_pairwise_oracle(P, Q):
    gx, gy, contained = kernels.sumset_gaps_numpy(*_gap_args(P, Q))
    assert contained
    assert sorted(zip(gx.tolist(), gy.tolist())) == naive_gaps(P, Q)


@needs_numba
@given(polygons, polygons)
def test_sumset_gap_backends_agree(P, Q):
    args = _gap_args(P, Q)
    a = kernels.sumset_gaps_numba(*args)
    b = kernels.sumset_gaps_numpy(*args)
    assert a[2] == b[2]
    assert sorted(zip(a[0].tolist(), a[1].tolist())) == sorted(zip(b[0].tolist(), b[1].tolist()))


def test_containment_flag_detects_escape():
    P = segment((0, 0), (1, 0))
    small = convex_hull([(0, 0)])
    args = (*P.row_spans, *P.row_spans, *small.row_spans)
    for f in (kernels.sumset_gaps_numpy, kernels.sumset_gaps_numba):
        assert not f(*args)[2]


@given(polygons, polygons)
def test_lex_witness_backends_agree_with_brute_force(P, Q):
    A, B = bbox_scan(P), bbox_scan(Q)
    sums = sorted(pairwise_sumset(A, B))
    zx = np.array([z[0] for z in sums], dtype=np.int64)
    zy = np.array([z[1] for z in sums], dtype=np.int64)
    expect = [min(a for a in A if (z[0] - a[0], z[1] - a[1]) in set(B)) for z in sums]
    args = (*P.row_spans, *Q.row_spans, zx, zy)
    for f in (kernels.lex_witnesses_numpy, kernels.lex_witnesses_numba):
        wx, wy, found = f(*args)
        assert found.all()
        assert list(zip(wx.tolist(), wy.tolist())) == expect


def test_backend_flag_is_reported():
    assert kernels.BACKEND in ("numba", "numpy")
    if _accel.NUMBA_DISABLED or not _accel.NUMBA_AVAILABLE:
        assert kernels.BACKEND == "numpy"


def _campaign_in_subprocess(disable: bool) -> dict:
    env = dict(os.environ)
    env.pop("LATTICESUM_DISABLE_NUMBA", None)
    if disable:
        env["LATTICESUM_DISABLE_NUMBA"] = "1"
    code = (
        "import json; from latticesum import kernels;"
        "from latticesum.campaign import CampaignConfig, run_campaign;"
        "r = run_campaign(CampaignConfig(seed=7, trials=150, bound=8, mode='theorem'));"
        "print(json.dumps({'backend': kernels.BACKEND, 'report': r.dumps(include_timing=False)}))"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


@needs_numba
def test_env_flag_selects_numpy_with_identical_results():
    fast = _campaign_in_subprocess(False)
    slow = _campaign_in_subprocess(True)
    assert fast["backend"] == "numba"
    assert slow["backend"] == "numpy"
    assert fast["report"] == slow["report"]
