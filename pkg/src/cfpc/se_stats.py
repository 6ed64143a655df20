"""Uplink SINR and spectral efficiency for MRC with MMSE estimates.

Two SINR routes coexist deliberately:

* ``sinr_general`` evaluates the use-and-forget bound from deterministic
  combining statistics (``uatf_statistics``); Monte-Carlo oracles validate
  every expectation it consumes.
* ``sinr_closed_form`` is the compact per-AP ratio the power-control
  problems are formulated on; it is the objective both optimizers use and
  the one the experiment harness reports.

The two do not coincide in general; the harness reports their gap instead
of reconciling them (see ``gap_report``).
"""

import logging
from dataclasses import dataclass

import numpy as np

from cfpc.pilots import (PilotAssignment, draw_channel, mmse_estimate,
                         pilot_observation_power)

log = logging.getLogger(__name__)


@dataclass
class PowerState:
    """Per-user pilot and data transmit powers in watts."""

    p_pilot: np.ndarray
    p_data: np.ndarray

    def __post_init__(self):
        self.p_pilot = np.asarray(self.p_pilot, dtype=float)
        self.p_data = np.asarray(self.p_data, dtype=float)

    def budget_slack(self, tau_p: int, tau_c: int, p_max: float) -> np.ndarray:
        """Per-user slack of the coherence-block energy budget (>= 0 when met)."""
        used = tau_p * self.p_pilot + (tau_c - tau_p) * self.p_data
        return tau_c * p_max - used


@dataclass
class SEReport:
    """Per-user SINR (linear) and spectral efficiency (bits/s/Hz)."""

    sinr: np.ndarray
    se: np.ndarray
    prelog: float


@dataclass
class UatfStatistics:
    """Deterministic statistics of the combined channel products.

    u_mean[m, k]   : mean desired product at AP m for user k
    u_cross[m, j, k]: mean cross product (co-pilot coupling; 0 otherwise)
    u2[m, j, k]    : second moment of the cross product
    f_diag[m, k]   : diagonal noise statistic
    """

    u_mean: np.ndarray
    u_cross: np.ndarray
    u2: np.ndarray
    f_diag: np.ndarray
    noise_stat: str


def uatf_statistics(beta, assignment: PilotAssignment, power_state: PowerState,
                    sigma2: float, tau_p: int, num_antennas: int,
                    noise_stat: str = "estimate_based") -> UatfStatistics:
    """Closed-form combining statistics for MRC with MMSE estimates.

    ``noise_stat`` selects the diagonal noise statistic: "estimate_based"
    uses the estimate's second moment (matches the Monte-Carlo ground truth
    for MRC weights), "channel_based" the raw channel gain.
    """
    beta = np.asarray(beta, dtype=float)
    n = num_antennas
    pp = power_state.p_pilot
    theta = pilot_observation_power(beta, pp, assignment, sigma2, tau_p)
    ratio = beta / theta                       # (M, K)
    quad = beta * ratio                        # beta^2 / theta
    u_mean = n * tau_p * pp[None, :] * quad    # (M, K)

    copilot = assignment.copilot_matrix()      # (K, K)
    amp = np.sqrt(np.outer(pp, pp))            # (K, K)
    # cross means: n * tau_p * sqrt(p_k p_j) * beta_mj * beta_mk / theta_mk
    u_cross = (n * tau_p) * amp[None, :, :] * beta[:, :, None] * ratio[:, None, :]
    u_cross = u_cross * copilot[None, :, :]    # zero for non-co-pilot pairs

    # second moment: coherent part + per-antenna non-coherent part (all j)
    noncoh = n * tau_p * pp[None, None, :] * beta[:, :, None] * quad[:, None, :]
    u2 = u_cross ** 2 + noncoh

    if noise_stat == "estimate_based":
        f_diag = sigma2 * u_mean
    elif noise_stat == "channel_based":
        f_diag = sigma2 * n * beta
    else:
        raise ValueError(f"unknown noise_stat {noise_stat!r}")
    log.debug("uatf_statistics using %s noise statistic", noise_stat)
    return UatfStatistics(u_mean=u_mean, u_cross=u_cross, u2=u2,
                          f_diag=f_diag, noise_stat=noise_stat)


def sinr_general(stats: UatfStatistics, power_state: PowerState,
                 a_weights=None) -> np.ndarray:
    """Use-and-forget SINR per user for given combining weights (K, M).

    Cross-AP terms use products of means (APs fade independently); same-AP
    terms use the stored second moments.  Defaults to all-ones weights.
    """
    m, k = stats.u_mean.shape
    a = np.ones((k, m)) if a_weights is None else np.asarray(a_weights, float)
    pd = power_state.p_data

    sinr = np.empty(k)
    for user in range(k):
        w = a[user]                                    # (M,)
        mean_kk = w @ stats.u_mean[:, user]
        num = pd[user] * mean_kk ** 2
        cross = w @ stats.u_cross[:, :, user]          # (K,) summed means
        same_ap = (w * w) @ (stats.u2[:, :, user]
                             - stats.u_cross[:, :, user] ** 2)
        total_second = same_ap + cross ** 2            # E{|w^T u_jk|^2} per j
        den = float(pd @ total_second) - num + (w * w) @ stats.f_diag[:, user]
        if den <= 0:
            raise ValueError(
                f"non-positive interference power for user {user}: "
                "inconsistent statistics")
        sinr[user] = num / den
    return sinr


def closed_form_coefficients(beta, assignment: PilotAssignment, p_pilot,
                             sigma2: float, tau_p: int, num_antennas: int):
    """Coefficients (c, A, noise) of the per-AP closed-form SINR.

    SINR_k(p_data) = c_k * p_data_k / ((A @ p_data)_k + noise_k); affine in
    the data powers, which is what the max-min solver exploits.
    """
    beta = np.asarray(beta, dtype=float)
    pp = np.asarray(p_pilot, dtype=float)
    m = beta.shape[0]
    n = num_antennas
    theta = pilot_observation_power(beta, pp, assignment, sigma2, tau_p)
    cross_gain = (beta ** 2).T @ (1.0 / theta)   # [j, k] = sum_m beta_mj^2/theta_mk
    c = n * tau_p * pp * np.diag(cross_gain)
    a = n * tau_p * (pp[:, None] * cross_gain).T
    np.fill_diagonal(a, 0.0)
    a = a + beta.sum(axis=0)[None, :]
    noise = np.full(beta.shape[1], m * sigma2)
    return c, a, noise


def sinr_closed_form(beta, assignment: PilotAssignment,
                     power_state: PowerState, sigma2: float, tau_p: int,
                     num_antennas: int) -> np.ndarray:
    """Per-AP closed-form SINR; the optimization objective."""
    c, a, noise = closed_form_coefficients(beta, assignment,
                                           power_state.p_pilot, sigma2,
                                           tau_p, num_antennas)
    return c * power_state.p_data / (a @ power_state.p_data + noise)


def spectral_efficiency(sinr, tau_p: int, tau_c: int) -> SEReport:
    """SE per user with the training prelog factor."""
    sinr = np.asarray(sinr, dtype=float)
    if np.any(sinr < 0):
        raise ValueError("SINR must be non-negative")
    prelog = 1.0 - tau_p / tau_c
    return SEReport(sinr=sinr, se=prelog * np.log2(1.0 + sinr), prelog=prelog)


def monte_carlo_sinr_oracle(beta, assignment: PilotAssignment,
                            power_state: PowerState, sigma2: float,
                            tau_p: int, num_antennas: int, num_draws: int,
                            rng: np.random.Generator,
                            chunk: int = 2000) -> np.ndarray:
    """Empirical use-and-forget SINR (ones weights) from channel draws.

    Estimates every expectation in the general SINR from fresh channel and
    estimate realizations and assembles the same ratio; the independent
    check for ``sinr_general`` and its statistics.
    """
    beta = np.asarray(beta, dtype=float)
    k = beta.shape[1]
    pd = power_state.p_data

    sum_s_kk = np.zeros(k, dtype=complex)
    sum_abs2 = np.zeros((k, k))     # [j, user]
    sum_est_norm = np.zeros(k)
    done = 0
    while done < num_draws:
        b = min(chunk, num_draws - done)
        real = draw_channel(beta, num_antennas, rng, num=b)
        est = mmse_estimate(real, beta, power_state.p_pilot, assignment,
                            sigma2, tau_p, rng)
        # s[b, j, user] = sum_m sum_n conj(est[m, user, n]) g[m, j, n]
        s = np.einsum("bmkn,bmjn->bjk", est.conj(), real.g)
        sum_s_kk += s[:, np.arange(k), np.arange(k)].sum(axis=0)
        sum_abs2 += (s.real ** 2 + s.imag ** 2).sum(axis=0)
        sum_est_norm += (est.real ** 2 + est.imag ** 2).sum(axis=(0, 1, 3))
        done += b

    mean_kk = sum_s_kk / num_draws
    mean_abs2 = sum_abs2 / num_draws
    noise_term = sigma2 * sum_est_norm / num_draws
    sinr = np.empty(k)
    for user in range(k):
        num = pd[user] * np.abs(mean_kk[user]) ** 2
        den = float(pd @ mean_abs2[:, user]) - num + noise_term[user]
        sinr[user] = 0.0 if pd[user] == 0 else num / max(den, 1e-300)
    return sinr


def monte_carlo_uatf_statistics(beta, assignment: PilotAssignment,
                                power_state: PowerState, sigma2: float,
                                tau_p: int, num_antennas: int,
                                num_draws: int, rng: np.random.Generator,
                                chunk: int = 2000):
    """Empirical (u_mean, u2, f_diag), entrywise over APs and user pairs."""
    beta = np.asarray(beta, dtype=float)
    m, k = beta.shape
    sum_u = np.zeros((m, k), dtype=complex)
    sum_u2 = np.zeros((m, k, k))
    sum_est = np.zeros((m, k))
    done = 0
    while done < num_draws:
        b = min(chunk, num_draws - done)
        real = draw_channel(beta, num_antennas, rng, num=b)
        est = mmse_estimate(real, beta, power_state.p_pilot, assignment,
                            sigma2, tau_p, rng)
        u = np.einsum("bmkn,bmjn->bmjk", est.conj(), real.g)
        sum_u += u[:, :, np.arange(k), np.arange(k)].sum(axis=0)
        sum_u2 += (u.real ** 2 + u.imag ** 2).sum(axis=0)
        sum_est += (est.real ** 2 + est.imag ** 2).sum(axis=(0, 3))
        done += b
    u_mean_hat = (sum_u / num_draws).real
    u2_hat = sum_u2 / num_draws
    f_diag_hat = sigma2 * sum_est / num_draws
    return u_mean_hat, u2_hat, f_diag_hat


def gap_report(beta, assignment: PilotAssignment, power_state: PowerState,
               sigma2: float, tau_p: int, num_antennas: int) -> dict:
    """Relative gap between the general-bound and closed-form SINRs.

    The two formulations are not algebraically equivalent; this quantifies
    the difference instead of asserting it away.
    """
    stats = uatf_statistics(beta, assignment, power_state, sigma2, tau_p,
                            num_antennas)
    general = sinr_general(stats, power_state)
    closed = sinr_closed_form(beta, assignment, power_state, sigma2, tau_p,
                              num_antennas)
    rel = np.abs(general - closed) / np.maximum(np.abs(general), 1e-300)
    return {
        "sinr_general": general.tolist(),
        "sinr_closed_form": closed.tolist(),
        "max_relative_gap": float(rel.max()),
        "median_relative_gap": float(np.median(rel)),
    }
