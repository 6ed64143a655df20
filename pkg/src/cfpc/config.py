"""Simulation configuration: defaults, validation, and TOML loading."""

import dataclasses
import sys
from dataclasses import dataclass
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class ConfigError(ValueError):
    """Invalid configuration (bad value, unknown key, broken invariant)."""


@dataclass
class SimulationConfig:
    """Network, frame, and algorithm parameters for one experiment.

    Powers are in watts, distances in the units noted per field.  The
    pilot/data budget couples epsilon_w and p_max_w through the coherence
    block: tau_p * epsilon_w must not exceed tau_c * p_max_w.
    """

    num_aps: int
    antennas_per_ap: int
    num_users: int
    tau_p: int
    area_side: float = 1.0          # km
    tau_c: int = 200
    carrier_freq_mhz: float = 1900.0
    ap_height_m: float = 15.0
    ue_height_m: float = 1.65
    shadow_std_db: float = 8.0
    d0_m: float = 10.0
    d1_m: float = 50.0
    bandwidth_hz: float = 20e6
    noise_figure_db: float = 9.0
    noise_temp_k: float = 290.0
    p_max_w: float = 0.1
    epsilon_w: float = 0.01
    zeta: float = 1e-4              # outer-loop stop on ||dp_data||_2, watts
    max_outer_iters: int = 20
    rng_seed: int = 0
    # behaviour switches
    fixed_topology: bool = False    # reuse one AP/UE layout across realizations
    top_l_aps: int | None = None    # pilot objective over the L strongest APs (None = all)
    noise_stat: str = "estimate_based"   # or "channel_based", see se_stats
    split_ratio: float | None = None     # baselines: energy fraction for the maxed phase
    fppa_theta_exp: float = -0.5
    pilot_init: str = "ub"          # pilot solver start: "ub" or "epsilon"

    def __post_init__(self):
        for name in ("num_aps", "antennas_per_ap", "num_users", "tau_p", "tau_c"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
                raise ConfigError(f"{name} must be a positive integer, got {v!r}")
        for name in ("area_side", "carrier_freq_mhz", "ap_height_m", "ue_height_m",
                     "bandwidth_hz", "noise_temp_k", "p_max_w", "epsilon_w", "zeta",
                     "d0_m", "d1_m"):
            v = getattr(self, name)
            if not v > 0:
                raise ConfigError(f"{name} must be strictly positive, got {v!r}")
        if self.shadow_std_db < 0:
            raise ConfigError("shadow_std_db must be non-negative")
        if self.noise_figure_db < 0:
            raise ConfigError("noise_figure_db must be non-negative")
        if self.max_outer_iters < 1:
            raise ConfigError("max_outer_iters must be at least 1")
        if self.tau_p > self.tau_c:
            raise ConfigError(f"tau_p={self.tau_p} exceeds tau_c={self.tau_c}")
        if self.epsilon_w * self.tau_p > self.tau_c * self.p_max_w:
            raise ConfigError(
                "pilot floor infeasible: epsilon_w*tau_p exceeds tau_c*p_max_w")
        if self.d0_m >= self.d1_m:
            raise ConfigError(f"d0_m={self.d0_m} must be below d1_m={self.d1_m}")
        if self.noise_stat not in ("estimate_based", "channel_based"):
            raise ConfigError(f"unknown noise_stat {self.noise_stat!r}")
        if self.pilot_init not in ("ub", "epsilon"):
            raise ConfigError(f"unknown pilot_init {self.pilot_init!r}")
        if self.top_l_aps is not None and self.top_l_aps < 1:
            raise ConfigError("top_l_aps must be at least 1 when set")
        if self.split_ratio is not None and not 0 < self.split_ratio < 1:
            raise ConfigError("split_ratio must lie in (0, 1) when set")


_FIELDS = {f.name: f for f in dataclasses.fields(SimulationConfig)}


def _coerce(name: str, value):
    field = _FIELDS[name]
    if field.type == "int" and isinstance(value, bool):
        raise ConfigError(f"{name}: expected integer, got boolean")
    if field.type == "int" and isinstance(value, float):
        if value != int(value):
            raise ConfigError(f"{name}: expected integer, got {value}")
        return int(value)
    if field.type == "float" and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    return value


def config_from_mapping(mapping: dict) -> SimulationConfig:
    """Build a config from a flat-or-sectioned mapping; unknown keys are errors."""
    flat: dict = {}

    def absorb(d: dict, prefix: str):
        for key, value in d.items():
            if isinstance(value, dict):
                absorb(value, f"{prefix}{key}.")
            else:
                if key in flat:
                    raise ConfigError(f"duplicate key {key!r} (in section {prefix or 'top level'})")
                if key not in _FIELDS:
                    raise ConfigError(f"unknown configuration key {prefix}{key!r}")
                flat[key] = _coerce(key, value)

    absorb(mapping, "")
    missing = [n for n, f in _FIELDS.items()
               if f.default is dataclasses.MISSING and n not in flat]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")
    try:
        return SimulationConfig(**flat)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path) -> SimulationConfig:
    """Load a TOML configuration file (sections are organizational only)."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = tomllib.loads(raw.decode("utf-8"))
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config parse error in {path}: {exc}") from exc
    return config_from_mapping(data)
