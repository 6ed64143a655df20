"""Pilot assignment, channel realizations, and MMSE estimation statistics.

Pilot sequences are orthogonal, so they are represented purely through the
co-pilot indicator (which users share a pilot); explicit sequence vectors
are never materialized.  Users sharing a pilot see the same projected
observation, which is what couples their estimates.
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class PilotAssignment:
    """Pilot index per user, values in range(tau_p)."""

    pilot_of: np.ndarray
    tau_p: int

    def __post_init__(self):
        self.pilot_of = np.asarray(self.pilot_of, dtype=np.intp)
        if self.pilot_of.ndim != 1:
            raise ValueError("pilot_of must be one-dimensional")
        if np.any(self.pilot_of < 0) or np.any(self.pilot_of >= self.tau_p):
            raise ValueError("pilot indices out of range")

    @property
    def num_users(self) -> int:
        return self.pilot_of.shape[0]

    def copilot_matrix(self) -> np.ndarray:
        """(K, K) indicator: entry [k, j] is 1.0 iff k and j share a pilot."""
        same = self.pilot_of[:, None] == self.pilot_of[None, :]
        return same.astype(float)


@dataclass
class ChannelRealization:
    """Small-scale channel draws g, shape (..., M, K, N)."""

    g: np.ndarray


@dataclass
class EstimationStats:
    """Deterministic estimation quantities, each of shape (M, K)."""

    theta: np.ndarray   # pilot observation power
    gamma: np.ndarray   # per-antenna estimation-error variance
    nmse: np.ndarray    # gamma normalized by beta


def assign_pilots_random(num_users: int, tau_p: int,
                         rng: np.random.Generator) -> PilotAssignment:
    """Assign each user a pilot uniformly at random (i.i.d., no coordination)."""
    if tau_p < 1:
        raise ValueError("tau_p must be at least 1")
    return PilotAssignment(pilot_of=rng.integers(0, tau_p, size=num_users),
                           tau_p=tau_p)


def _check_powers(pilot_powers) -> np.ndarray:
    p = np.asarray(pilot_powers, dtype=float)
    if np.any(p < 0):
        raise ValueError("pilot powers must be non-negative")
    return p


def pilot_observation_power(beta, pilot_powers, assignment: PilotAssignment,
                            sigma2: float, tau_p: int) -> np.ndarray:
    """Second moment of the projected pilot observation, shape (M, K).

    Sums tau_p * p_j * beta_mj over users j sharing user k's pilot, plus the
    noise power; co-pilot users therefore share a column pattern.
    """
    beta = np.asarray(beta, dtype=float)
    p = _check_powers(pilot_powers)
    c = assignment.copilot_matrix()
    return tau_p * (beta * p[None, :]) @ c.T + sigma2


def estimation_error_variance(beta, pilot_powers, assignment: PilotAssignment,
                              sigma2: float, tau_p: int) -> np.ndarray:
    """Per-antenna MMSE error variance, shape (M, K); between 0 and beta."""
    beta = np.asarray(beta, dtype=float)
    p = _check_powers(pilot_powers)
    theta = pilot_observation_power(beta, p, assignment, sigma2, tau_p)
    return beta - tau_p * p[None, :] * beta * beta / theta


def nmse(beta, pilot_powers, assignment: PilotAssignment, sigma2: float,
         tau_p: int) -> np.ndarray:
    """Normalized estimation error, shape (M, K), in (0, 1]."""
    beta = np.asarray(beta, dtype=float)
    p = _check_powers(pilot_powers)
    theta = pilot_observation_power(beta, p, assignment, sigma2, tau_p)
    return 1.0 - tau_p * p[None, :] * beta / theta


def estimation_stats(beta, pilot_powers, assignment: PilotAssignment,
                     sigma2: float, tau_p: int) -> EstimationStats:
    """Bundle observation power, error variance, and NMSE for one setting."""
    beta = np.asarray(beta, dtype=float)
    p = _check_powers(pilot_powers)
    theta = pilot_observation_power(beta, p, assignment, sigma2, tau_p)
    gamma = beta - tau_p * p[None, :] * beta * beta / theta
    return EstimationStats(theta=theta, gamma=gamma, nmse=gamma / beta)


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def draw_channel(beta, num_antennas: int, rng: np.random.Generator,
                 num: int | None = None) -> ChannelRealization:
    """Draw i.i.d. complex Gaussian channels scaled by sqrt(beta).

    Returns shape (M, K, N), or (num, M, K, N) when num is given.
    """
    beta = np.asarray(beta, dtype=float)
    if np.any(beta <= 0):
        raise ValueError("beta entries must be strictly positive")
    m, k = beta.shape
    shape = (m, k, num_antennas) if num is None else (num, m, k, num_antennas)
    h = _complex_normal(rng, shape)
    return ChannelRealization(g=np.sqrt(beta)[..., :, :, None] * h)


def mmse_estimate(realization: ChannelRealization, beta, pilot_powers,
                  assignment: PilotAssignment, sigma2: float, tau_p: int,
                  rng: np.random.Generator) -> np.ndarray:
    """Channel estimates from a synthesized pilot observation.

    Builds the projected observation per (AP, pilot) — co-pilot users share
    it, including its noise — and scales it by the MMSE coefficient.  Used
    by the Monte-Carlo oracles, not by the optimization path.
    """
    beta = np.asarray(beta, dtype=float)
    p = _check_powers(pilot_powers)
    g = realization.g
    m, k, n = g.shape[-3:]
    amp = np.sqrt(tau_p * p)                       # (K,)

    # per-pilot sums of sqrt(tau_p p_j) g_mj
    y = np.zeros(g.shape[:-3] + (m, assignment.tau_p, n), dtype=complex)
    for t in range(assignment.tau_p):
        users = np.flatnonzero(assignment.pilot_of == t)
        if users.size:
            y[..., t, :] = np.einsum("...mjn,j->...mn", g[..., :, users, :],
                                     amp[users])
    y += np.sqrt(sigma2) * _complex_normal(rng, y.shape)

    theta = pilot_observation_power(beta, p, assignment, sigma2, tau_p)  # (M,K)
    coeff = amp[None, :] * beta / theta                                  # (M,K)
    return coeff[..., :, :, None] * y[..., :, assignment.pilot_of, :]
