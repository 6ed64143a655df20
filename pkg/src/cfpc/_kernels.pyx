# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: standard-interference fixed point and its bisection.

Semantics are mirrored by the NumPy fallback in ``cfpc.kernels``; keep the
two in sync.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef int _fixed_point(double[:, ::1] A, double[::1] F, double[::1] c,
                      double[::1] ub, double t, double tol_p, int cap,
                      double[::1] p, double[::1] scratch) noexcept:
    """Iterate p <- t*(A@p + F)/c from p (monotone). Returns 1 if converged
    with p <= ub + tol_p, 0 otherwise. On success p holds the fixed point."""
    cdef Py_ssize_t K = c.shape[0]
    cdef Py_ssize_t i, j, it
    cdef double acc, step, pn
    for it in range(cap):
        step = 0.0
        for i in range(K):
            acc = F[i]
            for j in range(K):
                acc += A[i, j] * p[j]
            pn = t * acc / c[i]
            if pn > ub[i] + tol_p:
                return 0
            scratch[i] = pn
            if pn - p[i] > step:
                step = pn - p[i]
        for i in range(K):
            p[i] = scratch[i]
        if step <= tol_p:
            for i in range(K):
                if p[i] > ub[i]:
                    p[i] = ub[i]
            return 1
    return 0


def interference_fixed_point(double[:, ::1] A, double[::1] F, double[::1] c,
                             double[::1] ub, double t, double tol_p, int cap,
                             p0=None):
    """Minimal fixed point of p = t*(A@p + F)/c within [0, ub].

    Returns (feasible, p) where p is the fixed point when feasible, else None.
    """
    cdef Py_ssize_t K = c.shape[0]
    p_arr = np.zeros(K) if p0 is None else np.array(p0, dtype=np.float64)
    scratch = np.empty(K)
    cdef double[::1] p = p_arr
    cdef double[::1] sc = scratch
    if _fixed_point(A, F, c, ub, t, tol_p, cap, p, sc):
        return True, p_arr
    return False, None


def maxmin_data_bisection(double[:, ::1] A, double[::1] F, double[::1] c,
                          double[::1] ub, double tol_t, double tol_p,
                          int fp_cap, int max_bisect):
    """Bisection on the SINR target t with warm-started fixed points.

    Returns (t_star, p, bisect_iters): the largest verified-feasible target,
    the minimal power vector achieving it, and the bisection count.
    """
    cdef Py_ssize_t K = c.shape[0]
    cdef double lo = 0.0, hi, mid, th
    cdef Py_ssize_t i
    cdef int iters = 0

    hi = -1.0
    for i in range(K):
        if c[i] <= 0.0 or ub[i] <= 0.0:
            return 0.0, np.zeros(K), 0
        th = c[i] * ub[i] / F[i]
        if hi < 0.0 or th < hi:
            hi = th
    if hi <= 0.0:
        return 0.0, np.zeros(K), 0

    p_best_arr = np.zeros(K)
    trial_arr = np.empty(K)
    scratch = np.empty(K)
    cdef double[::1] p_best = p_best_arr
    cdef double[::1] trial = trial_arr
    cdef double[::1] sc = scratch

    while hi - lo > tol_t * (lo if lo > 1e-12 else 1e-12) and iters < max_bisect:
        mid = 0.5 * (lo + hi)
        for i in range(K):
            trial[i] = p_best[i]
        if _fixed_point(A, F, c, ub, mid, tol_p, fp_cap, trial, sc):
            lo = mid
            for i in range(K):
                p_best[i] = trial[i]
        else:
            hi = mid
        iters += 1
    return lo, p_best_arr, iters
