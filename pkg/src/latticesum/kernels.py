"""Integer kernels over row spans.

A convex lattice set is stored row by row: for every integer ``y`` in
``[y0, y0 + len(lo))`` the lattice points on that row are exactly
``lo[i] <= x <= hi[i]``.  A row with ``lo[i] > hi[i]`` is empty.

Every kernel exists twice: a numba-compiled loop (``*_numba``) and a
vectorised numpy version (``*_numpy``).  The unsuffixed names dispatch to
one of them according to :data:`latticesum._accel.USE_NUMBA`.  All
arithmetic is int64; callers keep coordinates below ``2**20`` so nothing
here can overflow.
"""

import numpy as np

from ._accel import NUMBA_AVAILABLE, USE_NUMBA, njit

UNBOUNDED = 1 << 62


# --------------------------------------------------------------------------
# row spans of an H-polygon  {p : a*x + b*y <= c}


@njit
def row_spans_numba(normals, offsets, y0, y1):
    n = y1 - y0 + 1
    lo = np.empty(n, dtype=np.int64)
    hi = np.empty(n, dtype=np.int64)
    m = normals.shape[0]
    for r in range(n):
        y = y0 + r
        left = -UNBOUNDED
        right = UNBOUNDED
        for k in range(m):
            a = normals[k, 0]
            rhs = offsets[k] - normals[k, 1] * y
            if a > 0:
                v = rhs // a
                if v < right:
                    right = v
            elif a < 0:
                v = -((-rhs) // a)
                if v > left:
                    left = v
            elif rhs < 0:
                left = 1
                right = 0
                break
        lo[r] = left
        hi[r] = right
    return lo, hi


def row_spans_numpy(normals, offsets, y0, y1):
    normals = np.asarray(normals, dtype=np.int64)
    offsets = np.asarray(offsets, dtype=np.int64)
    ys = np.arange(y0, y1 + 1, dtype=np.int64)
    rhs = offsets[None, :] - normals[None, :, 1] * ys[:, None]
    a = normals[:, 0]
    lo = np.full(ys.shape, -UNBOUNDED, dtype=np.int64)
    hi = np.full(ys.shape, UNBOUNDED, dtype=np.int64)
    pos = a > 0
    neg = a < 0
    if pos.any():
        hi = np.minimum(hi, (rhs[:, pos] // a[pos]).min(axis=1))
    if neg.any():
        lo = np.maximum(lo, (-((-rhs[:, neg]) // a[neg])).max(axis=1))
    flat = a == 0
    if flat.any():
        dead = (rhs[:, flat] < 0).any(axis=1)
        lo[dead] = 1
        hi[dead] = 0
    return lo, hi


# --------------------------------------------------------------------------
# sumset of two span sets, compared against a target span set


@njit
def sumset_gaps_numba(ay0, alo, ahi, by0, blo, bhi, cy0, clo, chi):
    """Points of the target rows not covered by the row-wise sumset.

    Returns ``(gx, gy, contained)`` where ``contained`` is False if some
    sum falls outside the target rows.
    """
    na = alo.shape[0]
    nb = blo.shape[0]
    nc = clo.shape[0]
    total = 0
    for r in range(nc):
        if chi[r] >= clo[r]:
            total += chi[r] - clo[r] + 1
    gx = np.empty(total, dtype=np.int64)
    gy = np.empty(total, dtype=np.int64)
    ng = 0
    contained = True

    # every nonempty (row of A, row of B) pair must land in a target row
    for i in range(na):
        if alo[i] > ahi[i]:
            continue
        for j in range(nb):
            if blo[j] > bhi[j]:
                continue
            r = ay0 + i + by0 + j - cy0
            if r < 0 or r >= nc:
                contained = False

    ilo = np.empty(na, dtype=np.int64)
    ihi = np.empty(na, dtype=np.int64)
    for r in range(nc):
        y = cy0 + r
        k = 0
        for i in range(na):
            j = y - ay0 - i - by0
            if j < 0 or j >= nb:
                continue
            if alo[i] > ahi[i] or blo[j] > bhi[j]:
                continue
            ilo[k] = alo[i] + blo[j]
            ihi[k] = ahi[i] + bhi[j]
            k += 1
        if chi[r] < clo[r]:
            if k > 0:
                contained = False
            continue
        order = np.argsort(ilo[:k])
        cursor = clo[r]
        for t in range(k):
            s = order[t]
            if ilo[s] < clo[r] or ihi[s] > chi[r]:
                contained = False
            if ilo[s] > cursor:
                for x in range(cursor, min(ilo[s], chi[r] + 1)):
                    gx[ng] = x
                    gy[ng] = y
                    ng += 1
            if ihi[s] + 1 > cursor:
                cursor = ihi[s] + 1
        for x in range(cursor, chi[r] + 1):
            gx[ng] = x
            gy[ng] = y
            ng += 1
    return gx[:ng], gy[:ng], contained


def sumset_gaps_numpy(ay0, alo, ahi, by0, blo, bhi, cy0, clo, chi):
    alo, ahi, blo, bhi, clo, chi = (np.asarray(v, dtype=np.int64) for v in (alo, ahi, blo, bhi, clo, chi))
    ia = np.flatnonzero(alo <= ahi)
    ib = np.flatnonzero(blo <= bhi)
    contained = True
    if ia.size and ib.size:
        rows = (ay0 + ia)[:, None] + (by0 + ib)[None, :] - cy0
        contained = bool(rows.min() >= 0 and rows.max() < clo.size)
    gxs, gys = [], []
    for r in range(clo.size):
        y = cy0 + r
        j = y - ay0 - by0 - ia
        ok = (j >= 0) & (j < blo.size)
        i, j = ia[ok], j[ok]
        keep = blo[j] <= bhi[j]
        i, j = i[keep], j[keep]
        lo = alo[i] + blo[j]
        hi = ahi[i] + bhi[j]
        if chi[r] < clo[r]:
            contained = contained and lo.size == 0
            continue
        if lo.size and (lo.min() < clo[r] or hi.max() > chi[r]):
            contained = False
        order = np.argsort(lo, kind="stable")
        lo, hi = lo[order], hi[order]
        # coverage frontier before each interval
        reach = np.concatenate(([clo[r]], np.maximum.accumulate(hi + 1))) if lo.size else np.array([clo[r]])
        reach = np.maximum(reach, clo[r])
        starts = reach[:-1]
        holes = lo > starts
        for a, b in zip(starts[holes], np.minimum(lo[holes], chi[r] + 1)):
            xs = np.arange(a, b, dtype=np.int64)
            gxs.append(xs)
            gys.append(np.full(xs.size, y, dtype=np.int64))
        tail = np.arange(max(reach[-1], clo[r]), chi[r] + 1, dtype=np.int64)
        if tail.size:
            gxs.append(tail)
            gys.append(np.full(tail.size, y, dtype=np.int64))
    if not gxs:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), contained
    return np.concatenate(gxs), np.concatenate(gys), contained


# --------------------------------------------------------------------------
# lexicographically smallest decomposition z = x + y, x in A, y in B


@njit
def lex_witnesses_numba(ay0, alo, ahi, by0, blo, bhi, zx, zy):
    n = zx.shape[0]
    na = alo.shape[0]
    nb = blo.shape[0]
    wx = np.empty(n, dtype=np.int64)
    wy = np.empty(n, dtype=np.int64)
    found = np.zeros(n, dtype=np.bool_)
    for t in range(n):
        best = UNBOUNDED
        best_row = 0
        for i in range(na):
            j = zy[t] - ay0 - i - by0
            if j < 0 or j >= nb:
                continue
            lo = alo[i]
            if zx[t] - bhi[j] > lo:
                lo = zx[t] - bhi[j]
            hi = ahi[i]
            if zx[t] - blo[j] < hi:
                hi = zx[t] - blo[j]
            if lo <= hi and lo < best:
                best = lo
                best_row = i
        if best < UNBOUNDED:
            found[t] = True
            wx[t] = best
            wy[t] = ay0 + best_row
        else:
            wx[t] = 0
            wy[t] = 0
    return wx, wy, found


def lex_witnesses_numpy(ay0, alo, ahi, by0, blo, bhi, zx, zy):
    alo, ahi, blo, bhi = (np.asarray(v, dtype=np.int64) for v in (alo, ahi, blo, bhi))
    zx = np.asarray(zx, dtype=np.int64)
    zy = np.asarray(zy, dtype=np.int64)
    rows = np.arange(alo.size, dtype=np.int64)
    wx = np.zeros(zx.size, dtype=np.int64)
    wy = np.zeros(zx.size, dtype=np.int64)
    found = np.zeros(zx.size, dtype=bool)
    chunk = max(1, 1_000_000 // max(alo.size, 1))
    for s in range(0, zx.size, chunk):
        px = zx[s:s + chunk, None]
        j = zy[s:s + chunk, None] - ay0 - rows[None, :] - by0
        valid = (j >= 0) & (j < blo.size)
        jc = np.clip(j, 0, max(blo.size - 1, 0))
        lo = np.maximum(alo[None, :], px - bhi[jc])
        hi = np.minimum(ahi[None, :], px - blo[jc])
        valid &= lo <= hi
        cand = np.where(valid, lo, UNBOUNDED)
        pick = cand.argmin(axis=1)
        got = valid.any(axis=1)
        sl = slice(s, s + chunk)
        found[sl] = got
        wx[sl] = np.where(got, cand[np.arange(pick.size), pick], 0)
        wy[sl] = np.where(got, ay0 + pick, 0)
    return wx, wy, found


if USE_NUMBA:
    row_spans = row_spans_numba
    sumset_gaps = sumset_gaps_numba
    lex_witnesses = lex_witnesses_numba
else:
    row_spans = row_spans_numpy
    sumset_gaps = sumset_gaps_numpy
    lex_witnesses = lex_witnesses_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"

__all__ = [
    "BACKEND",
    "NUMBA_AVAILABLE",
    "lex_witnesses",
    "lex_witnesses_numba",
    "lex_witnesses_numpy",
    "row_spans",
    "row_spans_numba",
    "row_spans_numpy",
    "sumset_gaps",
    "sumset_gaps_numba",
    "sumset_gaps_numpy",
]
