"""Power-control schemes: the iterative pilot/data loop and the baselines.

All schemes share the same budget conventions and return the same result
shape so the experiment harness can run them interchangeably on one channel
state.  "Maximum" for a fixed phase means the per-symbol power cap; the
``split_ratio`` switch reallocates the block energy instead.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from cfpc.config import SimulationConfig
from cfpc.data_opt import DataOptProblem, solve_p5
from cfpc.network import noise_power_w
from cfpc.pilot_opt import PilotOptProblem, nmse_objective, serving_mask_top_l, solve_p3
from cfpc.pilots import PilotAssignment
from cfpc.se_stats import PowerState, SEReport, sinr_closed_form, spectral_efficiency

BUDGET_TOL = 1e-9

# The outer loop stops on data-power movement; the inner bisection must
# resolve the target well below zeta or its slack masks convergence.
OUTER_SOLVER_TOL_T = 1e-9


class SchemeId(Enum):
    IPPA = "ippa"
    NPPA = "nppa"
    CPPA = "cppa"
    FPPA = "fppa"


@dataclass
class DriverResult:
    scheme: SchemeId
    power_state: PowerState
    se_report: SEReport
    outer_iterations: int
    converged: bool
    trace: list  # per outer iteration: (||dp_data||_2, nu, t_star)


def _pilot_max_split(config: SimulationConfig) -> float:
    """Pilot power of a scheme that fixes pilots at maximum."""
    if config.split_ratio is None:
        return config.p_max_w
    return config.split_ratio * config.tau_c * config.p_max_w / config.tau_p


def _data_max_split(config: SimulationConfig) -> float:
    """Data power of a scheme that fixes data at maximum."""
    if config.split_ratio is None:
        return config.p_max_w
    return (config.split_ratio * config.tau_c * config.p_max_w
            / (config.tau_c - config.tau_p))


def _check_budget(state: PowerState, config: SimulationConfig) -> None:
    slack = state.budget_slack(config.tau_p, config.tau_c, config.p_max_w)
    if slack.min() < -BUDGET_TOL:
        raise RuntimeError(f"energy budget violated by {-slack.min():.3e} W")


def evaluate_power_state(beta, assignment: PilotAssignment,
                         config: SimulationConfig,
                         state: PowerState) -> SEReport:
    """SE of a power allocation under the closed-form SINR."""
    sinr = sinr_closed_form(beta, assignment, state, noise_power_w(config),
                            config.tau_p, config.antennas_per_ap)
    return spectral_efficiency(sinr, config.tau_p, config.tau_c)


def _pilot_problem(beta, assignment, config, sigma2, p_data, serving_mask):
    return PilotOptProblem(beta=beta, assignment=assignment, sigma2=sigma2,
                           tau_p=config.tau_p, tau_c=config.tau_c,
                           p_max=config.p_max_w, epsilon=config.epsilon_w,
                           p_data_current=p_data, serving_mask=serving_mask)


def _data_problem(beta, assignment, config, sigma2, p_pilot):
    return DataOptProblem(beta=beta, assignment=assignment,
                          p_pilot_hat=p_pilot, sigma2=sigma2,
                          tau_p=config.tau_p, tau_c=config.tau_c,
                          p_max=config.p_max_w,
                          num_antennas=config.antennas_per_ap)


def run_ippa(beta, assignment: PilotAssignment, config: SimulationConfig,
             serving_mask=None) -> DriverResult:
    """Alternate pilot and data power optimization until the data powers
    settle (2-norm change at most zeta) or the iteration cap is reached.

    Starts from full data power: each user at the largest data power the
    budget allows when its pilot sits at the floor.
    """
    beta = np.asarray(beta, dtype=float)
    sigma2 = noise_power_w(config)
    if serving_mask is None:
        serving_mask = serving_mask_top_l(beta, config.top_l_aps)
    k = beta.shape[1]
    tau_p, tau_c = config.tau_p, config.tau_c
    p_data = np.full(k, (tau_c * config.p_max_w - tau_p * config.epsilon_w)
                     / (tau_c - tau_p))
    p_pilot = np.full(k, config.epsilon_w)
    trace = []
    converged = False
    outer = 0
    for outer in range(1, config.max_outer_iters + 1):
        pilot_sol = solve_p3(
            _pilot_problem(beta, assignment, config, sigma2, p_data,
                           serving_mask),
            pilot_init=config.pilot_init)
        p_pilot = pilot_sol.p_pilot
        data_sol = solve_p5(_data_problem(beta, assignment, config, sigma2,
                                          p_pilot),
                            tol_t=OUTER_SOLVER_TOL_T)
        delta = float(np.linalg.norm(data_sol.p_data - p_data))
        p_data = data_sol.p_data
        trace.append((delta, pilot_sol.nu, data_sol.t_star))
        if delta <= config.zeta:
            converged = True
            break
    state = PowerState(p_pilot=p_pilot, p_data=p_data)
    _check_budget(state, config)
    return DriverResult(scheme=SchemeId.IPPA, power_state=state,
                        se_report=evaluate_power_state(beta, assignment,
                                                       config, state),
                        outer_iterations=outer, converged=converged,
                        trace=trace)


def run_nppa(beta, assignment: PilotAssignment,
             config: SimulationConfig) -> DriverResult:
    """Full pilot power for everyone; data powers by max-min."""
    beta = np.asarray(beta, dtype=float)
    sigma2 = noise_power_w(config)
    k = beta.shape[1]
    p_pilot = np.full(k, _pilot_max_split(config))
    data_sol = solve_p5(_data_problem(beta, assignment, config, sigma2,
                                      p_pilot))
    state = PowerState(p_pilot=p_pilot, p_data=data_sol.p_data)
    _check_budget(state, config)
    nu = nmse_objective(p_pilot, _pilot_problem(
        beta, assignment, config, sigma2, data_sol.p_data,
        serving_mask_top_l(beta, config.top_l_aps)))
    return DriverResult(scheme=SchemeId.NPPA, power_state=state,
                        se_report=evaluate_power_state(beta, assignment,
                                                       config, state),
                        outer_iterations=1, converged=True,
                        trace=[(0.0, nu, data_sol.t_star)])


def run_cppa(beta, assignment: PilotAssignment, config: SimulationConfig,
             serving_mask=None) -> DriverResult:
    """One min-max NMSE pilot pass; data then takes the full remaining budget."""
    beta = np.asarray(beta, dtype=float)
    sigma2 = noise_power_w(config)
    if serving_mask is None:
        serving_mask = serving_mask_top_l(beta, config.top_l_aps)
    k = beta.shape[1]
    data_split = np.full(k, _data_max_split(config))
    pilot_sol = solve_p3(
        _pilot_problem(beta, assignment, config, sigma2, data_split,
                       serving_mask),
        pilot_init=config.pilot_init)
    p_data = ((config.tau_c * config.p_max_w
               - config.tau_p * pilot_sol.p_pilot)
              / (config.tau_c - config.tau_p))
    state = PowerState(p_pilot=pilot_sol.p_pilot, p_data=p_data)
    _check_budget(state, config)
    report = evaluate_power_state(beta, assignment, config, state)
    return DriverResult(scheme=SchemeId.CPPA, power_state=state,
                        se_report=report, outer_iterations=1, converged=True,
                        trace=[(0.0, pilot_sol.nu, float(report.sinr.min()))])


def run_fppa(beta, assignment: PilotAssignment, config: SimulationConfig,
             theta_exp: float | None = None) -> DriverResult:
    """Fractional pilot powers from aggregate channel gains; max-min data.

    Pilot weights follow (sum_m beta_mk)^theta_exp, normalized so the
    largest weight transmits at the scheme's pilot bound.
    """
    beta = np.asarray(beta, dtype=float)
    if theta_exp is None:
        theta_exp = config.fppa_theta_exp
    if not -1.0 <= theta_exp <= 0.0:
        raise ValueError("theta_exp must lie in [-1, 0]")
    sigma2 = noise_power_w(config)
    ub_pilot = ((config.tau_c * config.p_max_w
                 - (config.tau_c - config.tau_p) * _data_max_split(config))
                / config.tau_p)
    weights = beta.sum(axis=0) ** theta_exp
    p_pilot = ub_pilot * weights / weights.max()
    data_sol = solve_p5(_data_problem(beta, assignment, config, sigma2,
                                      p_pilot))
    state = PowerState(p_pilot=p_pilot, p_data=data_sol.p_data)
    _check_budget(state, config)
    nu = nmse_objective(p_pilot, _pilot_problem(
        beta, assignment, config, sigma2, data_sol.p_data,
        serving_mask_top_l(beta, config.top_l_aps)))
    return DriverResult(scheme=SchemeId.FPPA, power_state=state,
                        se_report=evaluate_power_state(beta, assignment,
                                                       config, state),
                        outer_iterations=1, converged=True,
                        trace=[(0.0, nu, data_sol.t_star)])


def run_scheme(scheme: SchemeId, beta, assignment: PilotAssignment,
               config: SimulationConfig) -> DriverResult:
    if scheme is SchemeId.IPPA:
        return run_ippa(beta, assignment, config)
    if scheme is SchemeId.NPPA:
        return run_nppa(beta, assignment, config)
    if scheme is SchemeId.CPPA:
        return run_cppa(beta, assignment, config)
    if scheme is SchemeId.FPPA:
        return run_fppa(beta, assignment, config)
    raise ValueError(f"unknown scheme {scheme!r}")
