"""Exact k-th-largest tent envelope sweep.

Each atom (b, d) of weight w contributes the tent t -> max(min(t-b, d-t), 0).
For a fixed t the mass level profile a -> value is a step function whose
steps sit at cumulative weights of the tents sorted by decreasing value.
Between two consecutive critical abscissae no pair of tent pieces crosses,
so sampling every level at the critical set and joining samples linearly is
exact.  The critical set is

    {b_i} u {d_i} u {(b_i + d_j) / 2 : b_i < d_j},

covering tent endpoints, peaks (i == j) and all ascending/descending piece
crossings; same-slope pieces are parallel and never cross transversally.

Everything runs on integer-scaled coordinates: positions scaled by twice
the lcm of coordinate denominators (so pair midpoints stay integral) and
weights by the lcm of weight denominators.  A numpy int64 path handles the
common case; arbitrary-size inputs fall back to pure Python integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

# int64 products appear in collinearity tests; keep factors well inside range.
_NUMPY_COORD_LIMIT = 1 << 30
_NUMPY_WEIGHT_LIMIT = 1 << 62


def level_bands(
    births: list[Fraction], deaths: list[Fraction], weights: list[Fraction]
) -> tuple[list[Fraction], list[list[tuple[Fraction, Fraction]]]]:
    """Level decomposition of the weighted tent arrangement.

    Returns ``(boundaries, profiles)`` where ``boundaries`` are the strictly
    increasing mass levels a_1 < ... < a_K and ``profiles[k]`` holds the
    canonical breakpoints of the profile on the level band (a_k, a_{k+1}]
    (with a_0 = 0).  Adjacent bands always have distinct profiles and no
    profile is identically zero.
    """
    n = len(births)
    if n == 0:
        return [], []

    coord_scale = 2 * lcm(*(x.denominator for x in births + deaths))
    weight_scale = lcm(*(w.denominator for w in weights))
    b_int = [int(x * coord_scale) for x in births]
    d_int = [int(x * coord_scale) for x in deaths]
    w_int = [int(w * weight_scale) for w in weights]

    max_coord = max(max(map(abs, b_int)), max(map(abs, d_int)))
    if max_coord < _NUMPY_COORD_LIMIT and sum(w_int) < _NUMPY_WEIGHT_LIMIT:
        boundaries, rows, t_vals = _sweep_numpy(b_int, d_int, w_int)
    else:
        boundaries, rows, t_vals = _sweep_python(b_int, d_int, w_int)

    profiles = [_canonical_points(t_vals, row, coord_scale) for row in rows]
    levels = [Fraction(a, weight_scale) for a in boundaries]
    return levels, profiles


def _critical_abscissae_numpy(b: np.ndarray, d: np.ndarray) -> np.ndarray:
    mids = (b[:, None] + d[None, :]) // 2
    mask = b[:, None] < d[None, :]
    return np.unique(np.concatenate([b, d, mids[mask]]))


def _sweep_numpy(b_int, d_int, w_int):
    b = np.asarray(b_int, dtype=np.int64)
    d = np.asarray(d_int, dtype=np.int64)
    w = np.asarray(w_int, dtype=np.int64)
    t = _critical_abscissae_numpy(b, d)

    val = np.minimum(t[None, :] - b[:, None], d[:, None] - t[None, :])
    np.maximum(val, 0, out=val)

    order = np.argsort(-val, axis=0, kind="stable")
    sval = np.take_along_axis(val, order, axis=0)
    cum = np.cumsum(w[order], axis=0)

    positive = sval > 0
    boundaries = np.unique(cum[positive])
    if boundaries.size == 0:
        return [], [], []

    # Cap cumulative weights of zero-value tents so searchsorted never picks them.
    capped = np.where(positive, cum, boundaries[-1] + 1)
    sval_padded = np.vstack([sval, np.zeros((1, sval.shape[1]), dtype=np.int64)])

    n_levels, n_t = boundaries.size, t.size
    prof = np.empty((n_levels, n_t), dtype=np.int64)
    for r in range(n_t):
        idx = np.searchsorted(capped[:, r], boundaries, side="left")
        prof[:, r] = sval_padded[idx, r]

    merged_levels, rows = _merge_equal_rows(
        boundaries.tolist(), [prof[k] for k in range(n_levels)], np.array_equal
    )
    return merged_levels, [row.tolist() for row in rows], t.tolist()


def _sweep_python(b_int, d_int, w_int):
    n = len(b_int)
    t_set = set(b_int) | set(d_int)
    for bi in b_int:
        for dj in d_int:
            if bi < dj:
                t_set.add((bi + dj) // 2)
    t_vals = sorted(t_set)

    columns = []
    boundary_set: set[int] = set()
    for t in t_vals:
        entries = []
        for i in range(n):
            v = min(t - b_int[i], d_int[i] - t)
            if v > 0:
                entries.append((v, w_int[i]))
        entries.sort(key=lambda e: -e[0])
        cums, vals, acc = [], [], 0
        for v, wt in entries:
            acc += wt
            cums.append(acc)
            vals.append(v)
        boundary_set.update(cums)
        columns.append((cums, vals))

    boundaries = sorted(boundary_set)
    rows = []
    for a in boundaries:
        row = []
        for cums, vals in columns:
            j = _first_at_least(cums, a)
            row.append(vals[j] if j < len(vals) else 0)
        rows.append(row)

    merged_levels, merged_rows = _merge_equal_rows(boundaries, rows, lambda x, y: x == y)
    return merged_levels, merged_rows, t_vals


def _first_at_least(sorted_values: list[int], target: int) -> int:
    lo, hi = 0, len(sorted_values)
    while lo < hi:
        mid = (lo + hi) // 2
        if sorted_values[mid] < target:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _merge_equal_rows(levels, rows, equal):
    """Drop a level boundary whenever its profile repeats the previous one."""
    merged_levels, merged_rows = [], []
    for a, row in zip(levels, rows):
        if merged_rows and equal(merged_rows[-1], row):
            merged_levels[-1] = a
        else:
            merged_levels.append(a)
            merged_rows.append(row)
    return merged_levels, merged_rows


def _canonical_points(t_vals, heights, scale) -> list[tuple[Fraction, Fraction]]:
    """Minimal breakpoint list: no three collinear samples, zero tails trimmed."""
    keep = [0]
    for j in range(1, len(t_vals) - 1):
        dt1 = t_vals[j] - t_vals[keep[-1]]
        dh1 = heights[j] - heights[keep[-1]]
        dt2 = t_vals[j + 1] - t_vals[j]
        dh2 = heights[j + 1] - heights[j]
        if dt1 * dh2 != dt2 * dh1:
            keep.append(j)
    if len(t_vals) > 1:
        keep.append(len(t_vals) - 1)

    pts = [(t_vals[j], heights[j]) for j in keep]
    while len(pts) >= 2 and pts[0][1] == 0 and pts[1][1] == 0:
        pts.pop(0)
    while len(pts) >= 2 and pts[-1][1] == 0 and pts[-2][1] == 0:
        pts.pop()
    if len(pts) == 1 or all(h == 0 for _, h in pts):
        return []
    return [(Fraction(t, scale), Fraction(h, scale)) for t, h in pts]
