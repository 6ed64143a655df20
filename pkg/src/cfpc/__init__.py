"""Uplink cell-free massive MIMO power-control simulator."""

from cfpc.config import ConfigError, SimulationConfig, load_config
from cfpc.data_opt import DataOptProblem, DataOptSolution, feasible_at, solve_p5
from cfpc.harness import ExperimentSpec, cdf, run_experiment
from cfpc.network import (LargeScaleFading, Topology, generate_topology,
                          large_scale_fading, noise_power_w, path_loss_db,
                          wrap_distance)
from cfpc.pilot_opt import (InfeasibleProblemError, PilotOptProblem,
                            PilotOptSolution, nmse_objective, solve_p3)
from cfpc.pilots import (ChannelRealization, EstimationStats, PilotAssignment,
                         assign_pilots_random, draw_channel,
                         estimation_error_variance, estimation_stats,
                         mmse_estimate, nmse, pilot_observation_power)
from cfpc.schemes import (DriverResult, SchemeId, run_cppa, run_fppa,
                          run_ippa, run_nppa, run_scheme)
from cfpc.se_stats import (PowerState, SEReport, UatfStatistics,
                           monte_carlo_sinr_oracle, sinr_closed_form,
                           sinr_general, spectral_efficiency, uatf_statistics)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
