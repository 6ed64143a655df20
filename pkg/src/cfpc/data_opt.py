"""Max-min data power optimization.

The closed-form SINR is affine in the data powers once pilots are fixed, so
the max-min problem is solved exactly by bisection on the common target:
feasibility of a target is decided by the standard-interference fixed point,
which is monotone from zero and yields the minimal feasible power vector.
The bisection + fixed-point core runs in the compiled kernel when available.
"""

from dataclasses import dataclass

import numpy as np

from cfpc import kernels
from cfpc.pilot_opt import BOUND_TOL, InfeasibleProblemError
from cfpc.pilots import PilotAssignment
from cfpc.se_stats import closed_form_coefficients

DEFAULT_TOL_T = 1e-5   # relative, on the SINR target
DEFAULT_TOL_P = 1e-9   # watts, fixed-point step / bound violation
FIXED_POINT_CAP = 10_000
MAX_BISECTIONS = 200


@dataclass
class DataOptProblem:
    """Inputs of the max-min data power problem for fixed pilot powers."""

    beta: np.ndarray
    assignment: PilotAssignment
    p_pilot_hat: np.ndarray
    sigma2: float
    tau_p: int
    tau_c: int
    p_max: float
    num_antennas: int

    def __post_init__(self):
        self.beta = np.asarray(self.beta, dtype=float)
        self.p_pilot_hat = np.asarray(self.p_pilot_hat, dtype=float)
        if np.any(self.p_pilot_hat < 0):
            raise ValueError("pilot powers must be non-negative")

    def upper_bounds(self) -> np.ndarray:
        """Per-user data bound from the energy budget at the fixed pilots."""
        ub = (self.tau_c * self.p_max
              - self.tau_p * self.p_pilot_hat) / (self.tau_c - self.tau_p)
        if np.any(ub < -BOUND_TOL):
            k = int(np.argmin(ub))
            raise InfeasibleProblemError(
                f"negative data bound {ub[k]:.3e} W for user {k}: pilots "
                "exceed the energy budget")
        return np.maximum(ub, 0.0)

    def coefficients(self):
        return closed_form_coefficients(self.beta, self.assignment,
                                        self.p_pilot_hat, self.sigma2,
                                        self.tau_p, self.num_antennas)


@dataclass
class DataOptSolution:
    p_data: np.ndarray
    t_star: float            # achieved common SINR target
    bisection_iters: int


def sinr_constraint_residual(t: float, p_data, problem: DataOptProblem) -> np.ndarray:
    """Signal power minus t times interference-plus-noise, per user.

    Non-negative exactly where the user's SINR meets the target t.
    """
    c, a, noise = problem.coefficients()
    p = np.asarray(p_data, dtype=float)
    return c * p - t * (a @ p + noise)


def feasible_at(t: float, problem: DataOptProblem,
                tol: float = DEFAULT_TOL_P):
    """Minimal power vector meeting SINR target t, or None if infeasible.

    Fixed-point iteration p <- t * interference(p) / signal_gain from zero;
    each step is asserted componentwise non-decreasing, so escaping the
    bound box certifies infeasibility.
    """
    if t < 0:
        raise ValueError("target must be non-negative")
    c, a, noise = problem.coefficients()
    ub = problem.upper_bounds()
    if t == 0.0:
        return np.zeros_like(ub)
    if np.any(c <= 0):
        return None
    p = np.zeros_like(ub)
    for _ in range(FIXED_POINT_CAP):
        pn = t * (a @ p + noise) / c
        assert np.all(pn >= p - 1e-18), "interference iteration not monotone"
        if np.any(pn > ub + tol):
            return None
        if np.max(pn - p) <= tol:
            return np.minimum(pn, ub)
        p = pn
    return None


def solve_p5(problem: DataOptProblem, tol_t: float = DEFAULT_TOL_T,
             tol_p: float = DEFAULT_TOL_P) -> DataOptSolution:
    """Bisection on the common SINR target over [0, single-user bound].

    The upper bracket evaluates each user alone at its power bound with all
    interference removed, a valid cap on the max-min value.  Returns the
    minimal power vector achieving the final verified-feasible target.
    """
    c, a, noise = problem.coefficients()
    ub = problem.upper_bounds()
    if np.any(ub <= 0) or np.any(c <= 0):
        # a degenerate user pins the max-min value at zero
        return DataOptSolution(p_data=np.zeros_like(ub), t_star=0.0,
                               bisection_iters=0)
    t_star, p, iters = kernels.maxmin_data_bisection(
        a, noise, c, ub, tol_t=tol_t, tol_p=tol_p,
        fp_cap=FIXED_POINT_CAP, max_bisect=MAX_BISECTIONS)
    return DataOptSolution(p_data=np.asarray(p), t_star=float(t_star),
                           bisection_iters=int(iters))
