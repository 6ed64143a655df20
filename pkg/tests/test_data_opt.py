import numpy as np
import pytest

from conftest import assignment_of, random_beta
from cfpc.data_opt import (DataOptProblem, feasible_at,
                           sinr_constraint_residual, solve_p5)
from cfpc.pilot_opt import InfeasibleProblemError
from cfpc.se_stats import PowerState, sinr_closed_form

SIGMA2 = 6.36e-13
TAU_C, P_MAX = 200, 0.1


def make_problem(beta, pilots, tau_p, p_pilot, n=1):
    return DataOptProblem(beta=beta, assignment=assignment_of(pilots, tau_p),
                          p_pilot_hat=np.asarray(p_pilot, float),
                          sigma2=SIGMA2, tau_p=tau_p, tau_c=TAU_C,
                          p_max=P_MAX, num_antennas=n)


def solver_sinr(problem, p_data):
    state = PowerState(p_pilot=problem.p_pilot_hat, p_data=p_data)
    return sinr_closed_form(problem.beta, problem.assignment, state,
                            problem.sigma2, problem.tau_p,
                            problem.num_antennas)


def grid_maxmin(problem, points=60):
    """Brute-force max-min SINR over the data power box."""
    ub = problem.upper_bounds()
    axes = [np.linspace(0.0, u, points) for u in ub]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(ub))
    c, a, noise = problem.coefficients()
    sinr = grid * c[None, :] / (grid @ a.T + noise[None, :])
    objs = sinr.min(axis=1)
    best = int(np.argmax(objs))
    return float(objs[best]), grid[best]


class TestResidual:
    def test_zero_target_nonnegative(self, rng):
        beta = random_beta(rng, 4, 3)
        problem = make_problem(beta, [0, 0, 1], 2, rng.uniform(0.01, 0.1, 3))
        r = sinr_constraint_residual(0.0, rng.uniform(0, P_MAX, 3), problem)
        assert np.all(r >= 0)

    def test_zero_power_all_noise(self, rng):
        beta = random_beta(rng, 4, 2)
        problem = make_problem(beta, [0, 1], 2, [0.05, 0.05])
        r = sinr_constraint_residual(2.0, np.zeros(2), problem)
        assert np.allclose(r, -2.0 * 4 * SIGMA2, rtol=1e-12, atol=0)

    def test_root_exactly_at_sinr(self, rng):
        beta = random_beta(rng, 4, 3)
        problem = make_problem(beta, [0, 1, 0], 2, rng.uniform(0.01, 0.1, 3))
        p = rng.uniform(0.01, P_MAX, 3)
        sinr = solver_sinr(problem, p)
        for k in range(3):
            r = sinr_constraint_residual(float(sinr[k]), p, problem)
            assert r[k] == pytest.approx(0.0, abs=1e-20)


class TestFeasibility:
    def test_single_user_threshold(self, rng):
        beta = random_beta(rng, 4, 1)
        problem = make_problem(beta, [0], 2, [0.08])
        ub = problem.upper_bounds()
        limit = float(solver_sinr(problem, ub)[0])
        assert feasible_at(0.999 * limit, problem) is not None
        assert feasible_at(1.001 * limit, problem) is None

    def test_zero_target_zero_power(self, rng):
        beta = random_beta(rng, 3, 2)
        problem = make_problem(beta, [0, 0], 1, [0.05, 0.05])
        assert np.array_equal(feasible_at(0.0, problem), np.zeros(2))

    def test_minimal_vector_meets_target(self, rng):
        beta = random_beta(rng, 4, 3)
        problem = make_problem(beta, [0, 0, 1], 2, rng.uniform(0.01, 0.1, 3))
        t_grid, _ = grid_maxmin(problem, points=30)
        p = feasible_at(0.9 * t_grid, problem)
        assert p is not None
        assert np.all(solver_sinr(problem, p) >= 0.9 * t_grid * (1 - 1e-6))

    def test_agrees_with_grid_verdicts(self, rng):
        for _ in range(3):
            beta = random_beta(rng, 4, 3)
            problem = make_problem(beta, rng.integers(0, 2, 3), 2,
                                   rng.uniform(0.01, 0.1, 3))
            t_grid, _ = grid_maxmin(problem)
            # a target the grid certifies must be feasible for the solver
            assert feasible_at(0.95 * t_grid, problem) is not None
            # just beyond the solver's own optimum must be infeasible
            t_star = solve_p5(problem).t_star
            assert feasible_at(1.05 * t_star, problem) is None


class TestSolver:
    def test_single_user_corner(self, rng):
        beta = random_beta(rng, 4, 1)
        problem = make_problem(beta, [0], 2, [0.07])
        sol = solve_p5(problem, tol_t=1e-8)
        ub = problem.upper_bounds()[0]
        assert sol.p_data[0] == pytest.approx(ub, rel=1e-4)
        assert sol.t_star == pytest.approx(float(solver_sinr(problem, [ub])[0]),
                                           rel=1e-4)

    def test_symmetric_instance(self):
        column = 10.0 ** np.linspace(-12, -10, 4)
        beta = np.tile(column[:, None], (1, 2))
        problem = make_problem(beta, [0, 0], 2, [0.05, 0.05])
        sol = solve_p5(problem)
        assert sol.p_data[0] == pytest.approx(sol.p_data[1], rel=1e-6)
        sinr = solver_sinr(problem, sol.p_data)
        assert sinr[0] == pytest.approx(sinr[1], rel=1e-6)

    def test_beats_grid_search(self, rng):
        for _ in range(3):
            beta = random_beta(rng, 4, 3)
            problem = make_problem(beta, rng.integers(0, 2, 3), 2,
                                   rng.uniform(0.01, 0.1, 3))
            sol = solve_p5(problem, tol_t=1e-6)
            t_grid, _ = grid_maxmin(problem)
            assert sol.t_star >= t_grid * (1 - 1e-3)
            # and the claim is verified: every user meets the target
            sinr = solver_sinr(problem, sol.p_data)
            assert np.all(sinr >= sol.t_star * (1 - 1e-6))

    def test_min_user_is_tight(self, rng):
        beta = random_beta(rng, 5, 4)
        problem = make_problem(beta, rng.integers(0, 2, 4), 2,
                               rng.uniform(0.01, 0.1, 4))
        sol = solve_p5(problem)
        sinr = solver_sinr(problem, sol.p_data)
        assert float(sinr.min()) == pytest.approx(sol.t_star, rel=1e-4)

    def test_degenerate_bound_returns_zero(self, rng):
        beta = random_beta(rng, 3, 2)
        # user 0's pilot consumes the entire block energy
        pilots = [TAU_C * P_MAX / 2, 0.05]
        problem = make_problem(beta, [0, 1], 2, pilots)
        sol = solve_p5(problem)
        assert sol.t_star == 0.0
        assert np.all(sol.p_data == 0)

    def test_pilot_power_shrinks_data_bound(self, rng):
        beta = random_beta(rng, 3, 2)
        lo = make_problem(beta, [0, 1], 2, [0.02, 0.05]).upper_bounds()
        hi = make_problem(beta, [0, 1], 2, [0.09, 0.05]).upper_bounds()
        assert hi[0] < lo[0]
        assert hi[1] == pytest.approx(lo[1])

    def test_negative_bound_raises(self, rng):
        beta = random_beta(rng, 3, 2)
        problem = make_problem(beta, [0, 1], 2, [2 * TAU_C * P_MAX, 0.05])
        with pytest.raises(InfeasibleProblemError):
            problem.upper_bounds()

    def test_bisection_bookkeeping(self, rng):
        beta = random_beta(rng, 4, 3)
        problem = make_problem(beta, [0, 0, 1], 2, rng.uniform(0.01, 0.1, 3))
        sol = solve_p5(problem)
        assert sol.bisection_iters > 0
        c, _, noise = problem.coefficients()
        t_cap = float(np.min(c * problem.upper_bounds() / noise))
        assert sol.t_star <= t_cap
