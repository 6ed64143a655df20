import numpy as np
import pytest

from cfpc.config import ConfigError, SimulationConfig
from cfpc.network import (BOLTZMANN, generate_topology, hata_constant_db,
                          large_scale_fading, noise_power_w, path_loss_db,
                          wrap_distance)


def default_config(**overrides):
    base = dict(num_aps=4, antennas_per_ap=1, num_users=3, tau_p=2)
    base.update(overrides)
    return SimulationConfig(**base)


class TestHataConstant:
    def test_frozen_value(self):
        # independent arithmetic: 46.3 + 33.9 log10(1900) - 13.82 log10(15)
        #                         - (1.1 log10(1900) - 0.7)*1.65
        #                         + (1.56 log10(1900) - 0.8)
        assert hata_constant_db(default_config()) == pytest.approx(
            140.71508370390842, abs=1e-9)

    def test_matches_two_decimal_report(self):
        assert round(hata_constant_db(default_config()), 2) == 140.72


class TestNoisePower:
    def test_default_value(self):
        # 1.381e-23 * 290 * 20e6 * 10^0.9
        cfg = default_config()
        assert noise_power_w(cfg) == pytest.approx(6.3624e-13, rel=1e-4)
        dbm = 10 * np.log10(noise_power_w(cfg) / 1e-3)
        assert dbm == pytest.approx(-91.96, abs=0.01)

    def test_zero_noise_figure_is_ktb(self):
        cfg = default_config(noise_figure_db=0.0)
        assert noise_power_w(cfg) == pytest.approx(
            BOLTZMANN * cfg.noise_temp_k * cfg.bandwidth_hz, rel=1e-12)

    def test_linear_in_bandwidth(self):
        lo = noise_power_w(default_config(bandwidth_hz=10e6))
        hi = noise_power_w(default_config(bandwidth_hz=20e6))
        assert hi == pytest.approx(2 * lo, rel=1e-12)


class TestPathLoss:
    def test_flat_below_inner_breakpoint(self):
        cfg = default_config()
        d0 = cfg.d0_m / 1000.0
        ref = path_loss_db(d0, cfg)
        for d in [1e-6, d0 / 10, d0 / 2, d0]:
            assert path_loss_db(d, cfg) == pytest.approx(ref, abs=1e-12)

    def test_continuity_at_breakpoints(self):
        cfg = default_config()
        for d_break in (cfg.d0_m / 1000.0, cfg.d1_m / 1000.0):
            below = path_loss_db(d_break * (1 - 1e-12), cfg)
            above = path_loss_db(d_break * (1 + 1e-12), cfg)
            assert above == pytest.approx(below, abs=1e-6)

    def test_outer_slope_formula(self):
        cfg = default_config()
        L = hata_constant_db(cfg)
        for d in (0.06, 0.2, 0.7):
            assert path_loss_db(d, cfg) == pytest.approx(
                -L - 35 * np.log10(d), abs=1e-9)

    def test_non_increasing(self):
        cfg = default_config()
        d = np.linspace(1e-4, 1.5, 4000)
        g = path_loss_db(d, cfg)
        assert np.all(np.diff(g) <= 1e-12)


class TestWrapDistance:
    def test_torus_shortcut(self):
        assert wrap_distance((0.1, 0.1), (0.9, 0.9), 1.0) == pytest.approx(
            np.sqrt(0.08), abs=1e-12)

    def test_identity(self):
        assert wrap_distance((0.3, 0.7), (0.3, 0.7), 1.0) == 0.0

    def test_maximum(self):
        assert wrap_distance((0.0, 0.0), (0.5, 0.5), 1.0) == pytest.approx(
            np.sqrt(0.5), abs=1e-12)

    def test_metric_properties_sampled(self, rng):
        # symmetry and triangle inequality on random triples
        pts = rng.uniform(0, 1, size=(200, 3, 2))
        for a, b, c in pts:
            dab = wrap_distance(a, b, 1.0)
            assert dab == pytest.approx(wrap_distance(b, a, 1.0), abs=1e-15)
            assert dab <= wrap_distance(a, c, 1.0) + wrap_distance(c, b, 1.0) + 1e-12
            assert dab <= np.sqrt(0.5) + 1e-12


class TestTopology:
    def test_support_and_determinism(self):
        cfg = default_config(num_aps=1, num_users=1)
        t1 = generate_topology(cfg, np.random.default_rng(5))
        t2 = generate_topology(cfg, np.random.default_rng(5))
        assert np.array_equal(t1.ap_positions, t2.ap_positions)
        assert np.array_equal(t1.ue_positions, t2.ue_positions)
        assert np.all((t1.ap_positions >= 0) & (t1.ap_positions < 1))
        assert np.all((t1.ue_positions >= 0) & (t1.ue_positions < 1))

    def test_uniform_mean(self):
        # Monte-Carlo check of uniformity: mean coordinate near 1/2
        cfg = default_config(num_aps=100_000, num_users=1)
        topo = generate_topology(cfg, np.random.default_rng(9))
        means = topo.ap_positions.mean(axis=0)
        assert np.all(np.abs(means - 0.5) < 0.01)


class TestLargeScaleFading:
    def _single_link_topology(self, cfg, distance_km):
        topo = generate_topology(cfg, np.random.default_rng(0))
        topo.ap_positions[:] = 0.0
        topo.ue_positions[:] = [distance_km, 0.0]
        return topo

    def test_no_shadowing_inside_breakpoint(self):
        cfg = default_config(num_aps=1, num_users=1)
        topo = self._single_link_topology(cfg, 0.03)  # below d1 = 50 m
        expected = 10 ** (path_loss_db(0.03, cfg) / 10)
        for seed in range(5):
            lsf = large_scale_fading(topo, cfg, np.random.default_rng(seed))
            assert lsf.beta[0, 0] == pytest.approx(expected, rel=1e-12)

    def test_zero_std_everywhere_deterministic(self):
        cfg = default_config(num_aps=3, num_users=2, shadow_std_db=0.0)
        topo = generate_topology(cfg, np.random.default_rng(3))
        b1 = large_scale_fading(topo, cfg, np.random.default_rng(1)).beta
        b2 = large_scale_fading(topo, cfg, np.random.default_rng(2)).beta
        assert np.array_equal(b1, b2)

    def test_shadowing_zero_mean_beyond_breakpoint(self):
        # 10*log10(beta) - Gamma averages to zero over many draws
        cfg = default_config(num_aps=1, num_users=1000)
        topo = generate_topology(cfg, np.random.default_rng(0))
        topo.ap_positions[:] = 0.0
        topo.ue_positions[:] = [0.2, 0.0]
        gamma_db = path_loss_db(0.2, cfg)
        rng = np.random.default_rng(11)
        excess = []
        for _ in range(100):  # 1e5 links total
            beta = large_scale_fading(topo, cfg, rng).beta
            excess.append(10 * np.log10(beta) - gamma_db)
        assert abs(np.mean(excess)) < 0.1

    def test_beta_positive_finite(self, rng):
        cfg = default_config(num_aps=30, num_users=10)
        topo = generate_topology(cfg, rng)
        beta = large_scale_fading(topo, cfg, rng).beta
        assert np.all(beta > 0)
        assert np.all(np.isfinite(np.log10(beta)))


class TestConfigValidation:
    def test_tau_p_exceeds_tau_c(self):
        with pytest.raises(ConfigError):
            default_config(tau_p=300)

    def test_pilot_floor_budget(self):
        with pytest.raises(ConfigError):
            default_config(epsilon_w=20.0)

    def test_breakpoint_order(self):
        with pytest.raises(ConfigError):
            default_config(d0_m=60.0)

    def test_positive_quantities(self):
        with pytest.raises(ConfigError):
            default_config(p_max_w=0.0)
        with pytest.raises(ConfigError):
            default_config(num_users=0)
