"""Monte-Carlo experiment harness: paired scheme comparison over random
channel states, raw sample persistence, and summary statistics.

Every scheme in a realization sees the same topology, shadowing, and pilot
assignment; per-realization generators are derived from (seed, index) so
runs are reproducible and order-deterministic.
"""

import dataclasses
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from cfpc.config import SimulationConfig
from cfpc.network import generate_topology, large_scale_fading, noise_power_w
from cfpc.pilot_opt import InfeasibleProblemError
from cfpc.pilots import assign_pilots_random
from cfpc.schemes import DriverResult, SchemeId, run_scheme
from cfpc.se_stats import gap_report

log = logging.getLogger(__name__)

RAW_HEADER = "realization,scheme,user,se_bps_hz,pilot_power_w,data_power_w,sinr_linear"

_TOPOLOGY_TAG = 0x746F706F  # distinct stream for the fixed-topology draw


class InfeasibleExperimentError(RuntimeError):
    """No realization of the experiment could be solved."""


@dataclass
class ExperimentSpec:
    config: SimulationConfig
    schemes: list
    realizations: int
    output_dir: Path
    sweep: list | None = None          # optional list of (M, N) pairs
    metric: str = "pooled"             # "pooled" or "minrate"

    def __post_init__(self):
        self.output_dir = Path(self.output_dir)
        self.schemes = [SchemeId(s) if not isinstance(s, SchemeId) else s
                        for s in self.schemes]
        if self.realizations < 1:
            raise ValueError("realizations must be at least 1")
        if self.metric not in ("pooled", "minrate"):
            raise ValueError(f"unknown metric {self.metric!r}")


def percentile_nearest_rank(samples, q: float) -> float:
    """Nearest-rank percentile (no interpolation); q in (0, 1]."""
    values = np.sort(np.asarray(samples, dtype=float))
    if values.size == 0:
        raise ValueError("empty sample set")
    rank = max(1, int(np.ceil(q * values.size)))
    return float(values[min(rank, values.size) - 1])


def cdf(samples):
    """Empirical CDF as (value, cumulative fraction) pairs, fractions i/n."""
    values = np.sort(np.asarray(samples, dtype=float))
    if values.size == 0:
        raise ValueError("empty sample set")
    n = values.size
    return [(float(v), (i + 1) / n) for i, v in enumerate(values)]


@dataclass
class _SchemeAccumulator:
    se: list = field(default_factory=list)
    min_se: list = field(default_factory=list)
    converged: int = 0
    runs: int = 0

    def add(self, result: DriverResult):
        self.se.extend(result.se_report.se.tolist())
        self.min_se.append(float(result.se_report.se.min()))
        self.converged += int(result.converged)
        self.runs += 1


def _scheme_stats(acc: _SchemeAccumulator, skipped: int, metric: str) -> dict:
    se = np.asarray(acc.se)
    median = percentile_nearest_rank(se, 0.5)
    median_min = percentile_nearest_rank(acc.min_se, 0.5)
    return {
        "median_se": median,
        "p5_se": percentile_nearest_rank(se, 0.05),
        "p95_se": percentile_nearest_rank(se, 0.95),
        "mean_se": float(se.mean()),
        "median_min_se": median_min,
        "likely_se_50": median if metric == "pooled" else median_min,
        "n_samples": int(se.size),
        "skipped": skipped,
        "converged": acc.converged,
        "runs": acc.runs,
    }


def _run_single(config: SimulationConfig, schemes, realizations: int,
                seed_prefix, metric: str, raw_path: Path) -> dict:
    """Run one experiment cell; writes the raw CSV, returns per-scheme stats."""
    acc = {s: _SchemeAccumulator() for s in schemes}
    skipped = 0
    gap = None
    fixed_topology = None
    if config.fixed_topology:
        topo_rng = np.random.default_rng(list(seed_prefix) + [_TOPOLOGY_TAG])
        fixed_topology = generate_topology(config, topo_rng)

    lines = [RAW_HEADER]
    for ridx in range(realizations):
        rng = np.random.default_rng(list(seed_prefix) + [ridx])
        topology = fixed_topology or generate_topology(config, rng)
        beta = large_scale_fading(topology, config, rng).beta
        assignment = assign_pilots_random(config.num_users, config.tau_p, rng)
        try:
            results = [run_scheme(s, beta, assignment, config) for s in schemes]
        except InfeasibleProblemError as exc:
            log.warning("realization %d skipped: %s", ridx, exc)
            skipped += 1
            continue
        for result in results:
            acc[result.scheme].add(result)
            ps = result.power_state
            for user in range(config.num_users):
                lines.append(
                    f"{ridx},{result.scheme.value},{user},"
                    f"{float(result.se_report.se[user])!r},"
                    f"{float(ps.p_pilot[user])!r},{float(ps.p_data[user])!r},"
                    f"{float(result.se_report.sinr[user])!r}")
        if gap is None:
            state = results[0].power_state
            gap = gap_report(beta, assignment, state, noise_power_w(config),
                             config.tau_p, config.antennas_per_ap)
    raw_path.parent.mkdir(parents=True, exist_ok=True)
    raw_path.write_text("\n".join(lines) + "\n")
    if skipped == realizations:
        raise InfeasibleExperimentError(
            f"all {realizations} realizations infeasible")
    stats = {s.value: _scheme_stats(acc[s], skipped, metric) for s in schemes}
    stats["_gap_general_vs_closed_form"] = gap
    return stats


def run_experiment(spec: ExperimentSpec) -> dict:
    """Execute the experiment (or sweep) and persist raw samples + summary."""
    config = spec.config
    out = spec.output_dir
    meta = {
        "config": dataclasses.asdict(config),
        "seed": config.rng_seed,
        "realizations": spec.realizations,
        "schemes": [s.value for s in spec.schemes],
        "metric": spec.metric,
    }
    if spec.sweep:
        products = {m * n for m, n in spec.sweep}
        if len(products) > 1:
            log.warning("sweep points do not share a total antenna count: %s",
                        sorted(products))
        summary = {"sweep": {}, "meta": meta}
        for m, n in spec.sweep:
            cell_cfg = dataclasses.replace(config, num_aps=m, antennas_per_ap=n)
            raw = out / f"raw_{m}x{n}.csv"
            cell = _run_single(cell_cfg, spec.schemes, spec.realizations,
                               (config.rng_seed, m, n), spec.metric, raw)
            summary["sweep"][f"{m}x{n}"] = cell
    else:
        stats = _run_single(config, spec.schemes, spec.realizations,
                            (config.rng_seed,), spec.metric, out / "raw.csv")
        summary = {**stats, "meta": meta}

    (out / "summary.json").write_text(json.dumps(summary, indent=2,
                                                 sort_keys=True) + "\n")
    return summary


def read_raw_csv(path) -> list[dict]:
    """Parse a raw samples file back into typed records."""
    text = Path(path).read_text().strip().splitlines()
    if not text or text[0] != RAW_HEADER:
        raise ValueError(f"unexpected raw CSV header in {path}")
    records = []
    for line in text[1:]:
        r, scheme, user, se, pp, pd_, sinr = line.split(",")
        records.append({
            "realization": int(r), "scheme": scheme, "user": int(user),
            "se_bps_hz": float(se), "pilot_power_w": float(pp),
            "data_power_w": float(pd_), "sinr_linear": float(sinr),
        })
    return records
