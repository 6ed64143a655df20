"""Network geometry and large-scale propagation.

Random AP/UE layouts on a wrap-around square, the three-slope Hata-type
path loss, lognormal shadowing beyond the outer breakpoint, and thermal
noise power.  Everything is deterministic given an explicit generator.
"""

from dataclasses import dataclass

import numpy as np

from cfpc.config import SimulationConfig

BOLTZMANN = 1.381e-23  # J/K

_TINY_KM = 1e-12  # distance clamp before logarithms


@dataclass
class Topology:
    """AP and UE planar positions (km) on a [0, area_side) torus."""

    ap_positions: np.ndarray  # (M, 2)
    ue_positions: np.ndarray  # (K, 2)
    area_side: float


@dataclass
class LargeScaleFading:
    """Linear-scale channel gains beta, shape (M, K)."""

    beta: np.ndarray


def generate_topology(config: SimulationConfig, rng: np.random.Generator) -> Topology:
    """Draw M AP and K UE positions i.i.d. uniform over the square."""
    side = config.area_side
    ap = rng.uniform(0.0, side, size=(config.num_aps, 2))
    ue = rng.uniform(0.0, side, size=(config.num_users, 2))
    return Topology(ap_positions=ap, ue_positions=ue, area_side=side)


def wrap_distance(a, b, side: float) -> float:
    """Torus distance: minimum over the 9 wrap-around copies of b."""
    d = np.abs(np.asarray(a, float) - np.asarray(b, float))
    d = np.minimum(d, side - d)
    return float(np.sqrt(np.sum(d * d)))


def _wrap_distance_matrix(ap: np.ndarray, ue: np.ndarray, side: float) -> np.ndarray:
    d = np.abs(ap[:, None, :] - ue[None, :, :])
    d = np.minimum(d, side - d)
    return np.sqrt((d * d).sum(axis=-1))


def hata_constant_db(config: SimulationConfig) -> float:
    """Fixed term L of the three-slope model (frequency/height dependent)."""
    f = config.carrier_freq_mhz
    lf = np.log10(f)
    return float(
        46.3 + 33.9 * lf - 13.82 * np.log10(config.ap_height_m)
        - (1.1 * lf - 0.7) * config.ue_height_m + (1.56 * lf - 0.8)
    )


def path_loss_db(d, config: SimulationConfig):
    """Three-slope path loss Gamma in dB for distance d in km.

    Slopes change at d0 and d1 (configured in meters); the branches agree
    exactly at both breakpoints.  Scalar or array d.
    """
    d0 = config.d0_m / 1000.0
    d1 = config.d1_m / 1000.0
    L = hata_constant_db(config)
    d = np.maximum(np.asarray(d, dtype=float), _TINY_KM)
    far = -L - 35.0 * np.log10(d)
    mid = -L - 15.0 * np.log10(d1) - 20.0 * np.log10(d)
    near = -L - 15.0 * np.log10(d1) - 20.0 * np.log10(d0)
    out = np.where(d > d1, far, np.where(d > d0, mid, near))
    return float(out) if out.ndim == 0 else out


def large_scale_fading(topology: Topology, config: SimulationConfig,
                       rng: np.random.Generator) -> LargeScaleFading:
    """beta = 10^((Gamma + shadowing)/10); shadowing only at d >= d1."""
    d = _wrap_distance_matrix(topology.ap_positions, topology.ue_positions,
                              topology.area_side)
    gamma_db = path_loss_db(d, config)
    z = rng.standard_normal(d.shape)
    d1 = config.d1_m / 1000.0
    shadowed = np.where(d >= d1, config.shadow_std_db * z, 0.0)
    beta = 10.0 ** ((gamma_db + shadowed) / 10.0)
    return LargeScaleFading(beta=beta)


def noise_power_w(config: SimulationConfig) -> float:
    """Thermal noise power k_B * T0 * B * NF (NF applied as a linear factor)."""
    nf = 10.0 ** (config.noise_figure_db / 10.0)
    return BOLTZMANN * config.noise_temp_k * config.bandwidth_hz * nf
