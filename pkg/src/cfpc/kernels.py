"""Hot-kernel dispatch: compiled Cython core with a NumPy fallback.

The max-min data power solver spends nearly all of its time in the
standard-interference fixed point, so that loop (and the bisection driving
it) lives in ``cfpc._kernels`` when the extension was built.  Setting the
environment variable ``CFPC_PURE_PYTHON=1`` forces the NumPy path; both
implementations share the exact same semantics (see ``_kernels.pyx``).
"""

import os

import numpy as np

try:
    from cfpc import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

if os.environ.get("CFPC_PURE_PYTHON"):
    _compiled = None


def backend() -> str:
    """Name of the active kernel implementation."""
    return "compiled" if _compiled is not None else "numpy"


def _fixed_point_np(A, F, c, ub, t, tol_p, cap, p0=None):
    p = np.zeros_like(c) if p0 is None else np.asarray(p0, dtype=float).copy()
    ub_tol = ub + tol_p
    for _ in range(cap):
        pn = t * (A @ p + F) / c
        if np.any(pn > ub_tol):
            return False, None
        if np.max(pn - p) <= tol_p:
            return True, np.minimum(pn, ub)
        p = pn
    return False, None


def _maxmin_bisection_np(A, F, c, ub, tol_t, tol_p, fp_cap, max_bisect):
    if np.any(c <= 0.0) or np.any(ub <= 0.0):
        return 0.0, np.zeros_like(c), 0
    hi = float(np.min(c * ub / F))
    if hi <= 0.0:
        return 0.0, np.zeros_like(c), 0
    lo = 0.0
    p_best = np.zeros_like(c)
    iters = 0
    while hi - lo > tol_t * max(lo, 1e-12) and iters < max_bisect:
        mid = 0.5 * (lo + hi)
        ok, p = _fixed_point_np(A, F, c, ub, mid, tol_p, fp_cap, p0=p_best)
        if ok:
            lo, p_best = mid, p
        else:
            hi = mid
        iters += 1
    return lo, p_best, iters


def interference_fixed_point(A, F, c, ub, t, tol_p=1e-9, cap=10_000, p0=None):
    """Minimal fixed point of p = t*(A@p + F)/c within [0, ub].

    Returns (feasible, p); p is None when infeasible (an iterate escaped the
    box or the iteration cap was hit while still moving more than tol_p).
    """
    if _compiled is not None:
        return _compiled.interference_fixed_point(
            np.ascontiguousarray(A, dtype=float),
            np.ascontiguousarray(F, dtype=float),
            np.ascontiguousarray(c, dtype=float),
            np.ascontiguousarray(ub, dtype=float),
            float(t), float(tol_p), int(cap), p0,
        )
    return _fixed_point_np(np.asarray(A, float), np.asarray(F, float),
                           np.asarray(c, float), np.asarray(ub, float),
                           float(t), float(tol_p), int(cap), p0=p0)


def maxmin_data_bisection(A, F, c, ub, tol_t, tol_p=1e-9, fp_cap=10_000,
                          max_bisect=200):
    """Largest feasible SINR target and its minimal power vector."""
    if _compiled is not None:
        return _compiled.maxmin_data_bisection(
            np.ascontiguousarray(A, dtype=float),
            np.ascontiguousarray(F, dtype=float),
            np.ascontiguousarray(c, dtype=float),
            np.ascontiguousarray(ub, dtype=float),
            float(tol_t), float(tol_p), int(fp_cap), int(max_bisect),
        )
    return _maxmin_bisection_np(np.asarray(A, float), np.asarray(F, float),
                                np.asarray(c, float), np.asarray(ub, float),
                                float(tol_t), float(tol_p), int(fp_cap),
                                int(max_bisect))
