"""Benchmark the compiled max-min kernel against the NumPy fallback.

Builds realistic coefficient systems (evaluation-scale network, 40 users)
and times the bisection + fixed-point core through both implementations,
then a full iterative-scheme realization each way.

Run: python benchmarks/bench_kernels.py
"""

import time

import numpy as np

import cfpc
from cfpc import kernels
from cfpc.se_stats import closed_form_coefficients


def build_systems(count=20, seed=0):
    cfg = cfpc.SimulationConfig(num_aps=100, antennas_per_ap=1, num_users=40,
                                tau_p=5, rng_seed=seed)
    systems = []
    instances = []
    rng = np.random.default_rng(seed)
    for _ in range(count):
        topo = cfpc.generate_topology(cfg, rng)
        beta = cfpc.large_scale_fading(topo, cfg, rng).beta
        assignment = cfpc.assign_pilots_random(cfg.num_users, cfg.tau_p, rng)
        p_pilot = rng.uniform(cfg.epsilon_w, cfg.p_max_w, cfg.num_users)
        c, a, noise = closed_form_coefficients(
            beta, assignment, p_pilot, cfpc.noise_power_w(cfg), cfg.tau_p, 1)
        ub = ((cfg.tau_c * cfg.p_max_w - cfg.tau_p * p_pilot)
              / (cfg.tau_c - cfg.tau_p))
        systems.append((a, noise, c, ub))
        instances.append((beta, assignment))
    return cfg, systems, instances


def time_kernel(fn, systems, repeats=3):
    best = np.inf
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = [fn(a, f, c, ub) for a, f, c, ub in systems]
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    cfg, systems, instances = build_systems()
    have_compiled = kernels.backend() == "compiled"
    print(f"active backend: {kernels.backend()}")
    print(f"{len(systems)} systems, K={len(systems[0][2])}\n")

    def run_numpy(a, f, c, ub):
        return kernels._maxmin_bisection_np(a, f, c, ub, 1e-9, 1e-9, 10_000, 200)

    t_np, res_np = time_kernel(run_numpy, systems)
    rows = [("numpy fallback", t_np, 1.0)]

    if have_compiled:
        from cfpc import _kernels

        def run_compiled(a, f, c, ub):
            return _kernels.maxmin_data_bisection(
                np.ascontiguousarray(a), np.ascontiguousarray(f),
                np.ascontiguousarray(c), np.ascontiguousarray(ub),
                1e-9, 1e-9, 10_000, 200)

        t_c, res_c = time_kernel(run_compiled, systems)
        rows.append(("compiled (cython)", t_c, t_np / t_c))
        worst = max(abs(a[0] - b[0]) / max(a[0], 1e-30)
                    for a, b in zip(res_np, res_c))
        print(f"max relative target disagreement numpy vs compiled: {worst:.2e}\n")

    print(f"{'kernel':<20} {'time [s]':>10} {'speedup':>9}")
    for name, t, speed in rows:
        print(f"{name:<20} {t:>10.3f} {speed:>8.1f}x")

    # end-to-end: one iterative-scheme realization through each backend
    beta, assignment = instances[0]
    saved = kernels._compiled
    try:
        kernels._compiled = None
        start = time.perf_counter()
        cfpc.run_ippa(beta, assignment, cfg)
        t_fallback = time.perf_counter() - start
        kernels._compiled = saved
        start = time.perf_counter()
        cfpc.run_ippa(beta, assignment, cfg)
        t_active = time.perf_counter() - start
    finally:
        kernels._compiled = saved
    print(f"\nrun_ippa single realization: fallback {t_fallback:.2f}s, "
          f"active backend {t_active:.2f}s "
          f"({t_fallback / t_active:.1f}x)")


if __name__ == "__main__":
    main()
