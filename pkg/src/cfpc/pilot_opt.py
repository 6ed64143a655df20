"""Min-max NMSE pilot power optimization.

The non-convex sum-of-ratios problem is attacked by successive
linearization: freeze the observation-power denominators at the previous
iterate, solve the resulting min-max linear program exactly (bisection on
the objective level; users decouple once the denominators are frozen), and
refresh.  The returned level is always the recomputed true objective, never
the linearized one.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from cfpc.pilots import PilotAssignment, nmse, pilot_observation_power

log = logging.getLogger(__name__)

BOUND_TOL = 1e-9  # watts; tolerance on budget-derived bounds

NU_BISECTION_TOL = 1e-6


class InfeasibleProblemError(RuntimeError):
    """The power box is empty: some upper bound sits below the pilot floor."""


def serving_mask_top_l(beta, top_l: int | None) -> np.ndarray:
    """(M, K) mask selecting each user's top-L APs by channel gain.

    top_l None (or >= M) keeps every AP.
    """
    beta = np.asarray(beta, dtype=float)
    m = beta.shape[0]
    if top_l is None or top_l >= m:
        return np.ones(beta.shape, dtype=bool)
    mask = np.zeros(beta.shape, dtype=bool)
    idx = np.argsort(-beta, axis=0)[:top_l]
    np.put_along_axis(mask, idx, True, axis=0)
    return mask


@dataclass
class PilotOptProblem:
    """Inputs of the pilot power problem for one channel state."""

    beta: np.ndarray
    assignment: PilotAssignment
    sigma2: float
    tau_p: int
    tau_c: int
    p_max: float
    epsilon: float
    p_data_current: np.ndarray
    serving_mask: np.ndarray | None = None   # (M, K) bool; None = all APs

    def __post_init__(self):
        self.beta = np.asarray(self.beta, dtype=float)
        self.p_data_current = np.asarray(self.p_data_current, dtype=float)
        if self.serving_mask is None:
            self.serving_mask = np.ones(self.beta.shape, dtype=bool)
        self.serving_mask = np.asarray(self.serving_mask, dtype=bool)
        if self.serving_mask.shape != self.beta.shape:
            raise ValueError("serving_mask shape must match beta")
        if not self.serving_mask.any(axis=0).all():
            raise ValueError("every user needs at least one serving AP")

    def upper_bounds(self) -> np.ndarray:
        """Per-user pilot bound from the energy budget at the current data powers."""
        ub = (self.tau_c * self.p_max
              - (self.tau_c - self.tau_p) * self.p_data_current) / self.tau_p
        low = ub < self.epsilon
        if np.any(ub < self.epsilon - BOUND_TOL):
            k = int(np.argmin(ub))
            raise InfeasibleProblemError(
                f"pilot bound {ub[k]:.3e} W below floor {self.epsilon} W "
                f"for user {k}")
        ub[low] = self.epsilon  # within tolerance: degenerate box
        return ub


@dataclass
class PilotOptSolution:
    p_pilot: np.ndarray
    nu: float                  # achieved max aggregate NMSE (true objective)
    iterations: int
    converged: bool
    trace: list = field(default_factory=list)


def nmse_objective(p_pilot, problem: PilotOptProblem) -> float:
    """Max over users of the NMSE summed over that user's serving APs."""
    values = nmse(problem.beta, p_pilot, problem.assignment, problem.sigma2,
                  problem.tau_p)
    per_user = np.where(problem.serving_mask, values, 0.0).sum(axis=0)
    return float(per_user.max())


def _level_bisection(set_sizes, slopes, ub, eps):
    """Smallest objective level reachable with every user inside its box.

    At frozen denominators user k attains level nu iff its power reaches
    (|A_k| - nu) / slope_k, checked against the upper bound; bisection over
    [0, sum |A_k|].
    """
    lo, hi = 0.0, float(set_sizes.sum())
    while hi - lo > NU_BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        needed = (set_sizes - mid) / slopes
        if np.all(needed <= ub + 1e-15):
            hi = mid
        else:
            lo = mid
    return hi


def solve_p3(problem: PilotOptProblem, tol: float = 1e-6,
             max_iters: int = 100, pilot_init: str = "ub") -> PilotOptSolution:
    """Successive linearization for the min-max NMSE pilot powers.

    Each round freezes the observation powers, finds the optimal level by
    bisection, and takes the minimal power vector attaining it (the
    bottleneck user lands on its upper bound; everyone else uses no more
    power than the level requires).  Stops when the iterate is stationary.
    """
    beta = problem.beta
    mask = problem.serving_mask
    tau_p = problem.tau_p
    ub = problem.upper_bounds()
    set_sizes = mask.sum(axis=0).astype(float)

    if pilot_init == "ub":
        p = ub.copy()
    elif pilot_init == "epsilon":
        p = np.full_like(ub, problem.epsilon)
    else:
        raise ValueError(f"unknown pilot_init {pilot_init!r}")

    best_p = p.copy()
    best_obj = nmse_objective(p, problem)
    prev_obj = best_obj
    trace = []
    converged = False
    iterations = 0
    for iterations in range(1, max_iters + 1):
        theta = pilot_observation_power(beta, p, problem.assignment,
                                        problem.sigma2, tau_p)
        slopes = tau_p * np.where(mask, beta / theta, 0.0).sum(axis=0)
        nu_lin = _level_bisection(set_sizes, slopes, ub, problem.epsilon)
        new_p = np.clip((set_sizes - nu_lin) / slopes, problem.epsilon, ub)
        assert np.all(new_p >= problem.epsilon - BOUND_TOL)
        assert np.all(new_p <= ub + BOUND_TOL)

        obj = nmse_objective(new_p, problem)
        trace.append((nu_lin, obj))
        if obj > prev_obj + tol:
            log.warning("pilot objective increased %.3e -> %.3e at iteration %d",
                        prev_obj, obj, iterations)
        if obj < best_obj:
            best_obj, best_p = obj, new_p.copy()
        step = float(np.max(np.abs(new_p - p)))
        p = new_p
        prev_obj = obj
        if step <= tol:
            converged = True
            break

    if not converged:
        p = best_p  # best iterate by true objective
    _log_envelope_diagnostic(p, problem)
    return PilotOptSolution(p_pilot=p, nu=nmse_objective(p, problem),
                            iterations=iterations, converged=converged,
                            trace=trace)


def _log_envelope_diagnostic(p_pilot, problem: PilotOptProblem) -> None:
    """Evaluate the literal envelope constraint pair on the solution.

    Kept as a diagnostic only: the pair mixes the ratio with affine terms of
    incompatible scale, so violations are expected and merely logged.
    """
    if not log.isEnabledFor(logging.DEBUG):
        return
    beta = problem.beta
    z = problem.tau_p * p_pilot[None, :] * beta
    v = pilot_observation_power(beta, p_pilot, problem.assignment,
                                problem.sigma2, problem.tau_p)
    q = 1.0 - z / v
    upper = 1.0 - z / v + (1.0 - z)
    lower = 1.0 - z / v + (1.0 - v)
    bad = int(np.sum((q > upper + 1e-12) | (q < lower - 1e-12)))
    log.debug("envelope diagnostic: %d of %d entries outside the literal pair",
              bad, q.size)
