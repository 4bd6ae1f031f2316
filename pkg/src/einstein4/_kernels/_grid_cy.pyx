# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled scan kernel for the box grid sweep.

Must stay operation-for-operation identical to `grid_py.scan_box`: same point
coordinates, same term evaluation order (powers as repeated multiplication,
terms summed in flattened order), same tie-breaking.
"""

from libc.math cimport INFINITY

DEF MAX_DIM = 16


cdef inline double _eval_terms(double* x, Py_ssize_t d,
                               double[::1] coeffs, int[:, ::1] expos,
                               Py_ssize_t t0, Py_ssize_t t1) nogil:
    cdef double total = 0.0
    cdef double term
    cdef Py_ssize_t t, j
    cdef int r, e
    for t in range(t0, t1):
        term = coeffs[t]
        for j in range(d):
            e = expos[t, j]
            for r in range(e):
                term = term * x[j]
        total = total + term
    return total


def scan_box(double[::1] lower, double[::1] upper, long long[::1] counts,
             long long start, long long stop,
             double[::1] obj_c, int[:, ::1] obj_e,
             double[::1] den_c, int[:, ::1] den_e,
             double[::1] con_c, int[:, ::1] con_e, long long[::1] con_off,
             double feas_tol):
    """Scan flat indices [start, stop); return (best_val, best_flat, feas_count)."""
    cdef Py_ssize_t d = lower.shape[0]
    if d > MAX_DIM:
        raise ValueError("kernel supports at most 16 variables")
    cdef double steps[MAX_DIM]
    cdef double x[MAX_DIM]
    cdef Py_ssize_t j
    for j in range(d):
        if counts[j] > 1:
            steps[j] = (upper[j] - lower[j]) / (counts[j] - 1)
        else:
            steps[j] = 0.0

    cdef Py_ssize_t ncons = con_off.shape[0] - 1
    cdef Py_ssize_t nobj = obj_c.shape[0]
    cdef Py_ssize_t nden = den_c.shape[0]

    cdef double best_val = INFINITY
    cdef long long best_flat = -1
    cdef long long feas_count = 0

    cdef long long flat, rem, k
    cdef Py_ssize_t c
    cdef double margin, obj
    cdef bint feasible

    with nogil:
        for flat in range(start, stop):
            rem = flat
            for j in range(d - 1, -1, -1):
                k = rem % counts[j]
                rem = rem // counts[j]
                x[j] = lower[j] + k * steps[j]
            feasible = True
            for c in range(ncons):
                margin = _eval_terms(x, d, con_c, con_e, con_off[c], con_off[c + 1])
                if margin < -feas_tol:
                    feasible = False
                    break
            if not feasible:
                continue
            feas_count += 1
            obj = _eval_terms(x, d, obj_c, obj_e, 0, nobj)
            if nden > 0:
                obj = obj / _eval_terms(x, d, den_c, den_e, 0, nden)
            if obj < best_val:
                best_val = obj
                best_flat = flat

    return best_val, best_flat, feas_count
