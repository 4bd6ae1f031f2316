"""Pure-numpy scan kernel: reference implementation of the grid sweep.

Semantics are shared with the compiled kernel `_grid_cy`:

* points are the C-order enumeration of the per-axis lattices
  ``lower[j] + k * step[j]`` with ``step[j] = (upper[j]-lower[j])/(counts[j]-1)``
  (``step = 0`` for single-point axes);
* a point is feasible iff every constraint margin is ``>= -feas_tol``;
* among feasible points the smallest objective wins, ties broken by the
  lowest flat index.

Term evaluation expands integer powers as repeated multiplication and sums
terms in flattened order so that both backends perform the identical sequence
of IEEE operations and return bit-identical results.
"""

from __future__ import annotations

import numpy as np

BLOCK = 1 << 17


def _eval_terms(pts, coeffs, expos):
    total = np.zeros(pts.shape[0])
    for t in range(coeffs.shape[0]):
        term = np.full(pts.shape[0], coeffs[t])
        for j in range(expos.shape[1]):
            for _ in range(int(expos[t, j])):
                term = term * pts[:, j]
        total = total + term
    return total


def scan_box(lower, upper, counts, start, stop,
             obj_c, obj_e, den_c, den_e, con_c, con_e, con_off, feas_tol):
    """Scan flat indices [start, stop); return (best_val, best_flat, feas_count)."""
    lower = np.asarray(lower, dtype=np.float64)
    upper = np.asarray(upper, dtype=np.float64)
    counts = np.asarray(counts, dtype=np.int64)
    d = lower.shape[0]
    steps = np.where(counts > 1, (upper - lower) / np.maximum(counts - 1, 1), 0.0)
    ncons = con_off.shape[0] - 1

    best_val = np.inf
    best_flat = -1
    feas_count = 0
    pos = int(start)
    while pos < stop:
        hi = min(pos + BLOCK, int(stop))
        flat = np.arange(pos, hi, dtype=np.int64)
        kk = np.empty((flat.shape[0], d), dtype=np.int64)
        rem = flat.copy()
        for j in range(d - 1, -1, -1):
            kk[:, j] = rem % counts[j]
            rem //= counts[j]
        pts = lower + kk * steps

        mask = np.ones(flat.shape[0], dtype=bool)
        for c in range(ncons):
            t0, t1 = int(con_off[c]), int(con_off[c + 1])
            vals = _eval_terms(pts, con_c[t0:t1], con_e[t0:t1])
            mask &= vals >= -feas_tol
        nfeas = int(np.count_nonzero(mask))
        feas_count += nfeas
        if nfeas:
            obj = _eval_terms(pts, obj_c, obj_e)
            if den_c.shape[0]:
                obj = obj / _eval_terms(pts, den_c, den_e)
            obj = np.where(mask, obj, np.inf)
            i = int(np.argmin(obj))
            if obj[i] < best_val:
                best_val = float(obj[i])
                best_flat = int(flat[i])
        pos = hi
    return best_val, best_flat, feas_count
