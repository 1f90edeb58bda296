import numpy as np
import pytest
from scipy.optimize import linprog

from congame import (
    ConstrainedGame,
    EmptyFeasibleSetError,
    LpProblem,
    LpStatus,
    best_response_col,
    best_response_row,
    lp_solve,
    nash_gap,
    simplex_backend,
)

from conftest import random_constrained_game


def scipy_reference(p: LpProblem):
    """Independent solve of the same problem via scipy (HiGHS)."""
    bounds = [(None, None) if np.isneginf(lo) else (lo, None) for lo in p.lower]
    return linprog(-p.c,
                   A_ub=p.A_le if p.A_le.size else None,
                   b_ub=p.b_le if p.A_le.size else None,
                   A_eq=p.A_eq if p.A_eq.size else None,
                   b_eq=p.b_eq if p.A_eq.size else None,
                   bounds=bounds, method="highs")


def random_lp(rng, n_vars, n_eq, n_le):
    # built around a known interior point so feasibility is common but
    # not guaranteed after perturbation
    z0 = rng.uniform(0, 1, n_vars)
    A_eq = rng.normal(size=(n_eq, n_vars)) if n_eq else None
    b_eq = A_eq @ z0 if n_eq else None
    A_le = rng.normal(size=(n_le, n_vars)) if n_le else None
    b_le = A_le @ z0 + rng.uniform(-0.2, 1.0, n_le) if n_le else None
    lower = np.zeros(n_vars)
    lower[rng.uniform(size=n_vars) < 0.25] = -np.inf
    return LpProblem(c=rng.normal(size=n_vars), A_eq=A_eq, b_eq=b_eq,
                     A_le=A_le, b_le=b_le, lower=lower)


class TestLpSolve:
    def test_single_variable_bound(self):
        sol = lp_solve(LpProblem(c=[1.0], A_le=[[1.0]], b_le=[1.0]))
        assert sol.status is LpStatus.OPTIMAL
        assert sol.z[0] == 1.0
        assert sol.value == 1.0

    def test_contradictory_bounds(self):
        sol = lp_solve(LpProblem(c=[1.0], A_le=[[1.0]], b_le=[-1.0]))
        assert sol.status is LpStatus.INFEASIBLE

    def test_open_ray(self):
        sol = lp_solve(LpProblem(c=[1.0]))
        assert sol.status is LpStatus.UNBOUNDED

    def test_free_variable_unbounded_downward(self):
        sol = lp_solve(LpProblem(c=[-1.0], lower=[-np.inf]))
        assert sol.status is LpStatus.UNBOUNDED

    def test_optimal_value_matches_objective(self):
        rng = np.random.default_rng(0)
        seen = 0
        for _ in range(30):
            p = random_lp(rng, 5, 1, 4)
            sol = lp_solve(p)
            if sol.status is LpStatus.OPTIMAL:
                assert sol.value == float(p.c @ sol.z)
                seen += 1
        assert seen > 5

    def test_against_scipy_on_random_problems(self):
        rng = np.random.default_rng(42)
        statuses = {"optimal": 0, "infeasible": 0, "unbounded": 0}
        for _ in range(120):
            p = random_lp(rng, int(rng.integers(2, 8)),
                          int(rng.integers(0, 3)), int(rng.integers(0, 6)))
            ours = lp_solve(p)
            ref = scipy_reference(p)
            statuses[ours.status.value] += 1
            if ours.status is LpStatus.OPTIMAL:
                assert ref.status == 0
                assert ours.value == pytest.approx(-ref.fun, abs=1e-7)
            elif ours.status is LpStatus.INFEASIBLE:
                assert ref.status == 2
            else:
                assert ref.status == 3
        # the generator must actually exercise all three outcomes
        assert statuses["optimal"] > 50
        assert statuses["infeasible"] > 0
        assert statuses["unbounded"] > 0

    def test_deterministic_bit_identical(self):
        rng = np.random.default_rng(9)
        p = random_lp(rng, 6, 1, 5)
        a = lp_solve(p)
        b = lp_solve(p)
        assert a.status is b.status
        assert a.z.tobytes() == b.z.tobytes()
        assert a.value == b.value
        assert a.basis == b.basis

    def test_weak_duality_perturbation(self):
        # raising any single variable (when that stays feasible) never
        # improves the reported optimum measurably
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = int(rng.integers(2, 6))
            p = random_lp(rng, n, 0, int(rng.integers(1, 5)))
            sol = lp_solve(p)
            if sol.status is not LpStatus.OPTIMAL:
                continue
            for idx in range(n):
                z = sol.z.copy()
                z[idx] += 1e-6
                if p.A_le.size and np.any(p.A_le @ z - p.b_le > 1e-12):
                    continue
                assert float(p.c @ z) - sol.value <= 1e-12 + 1e-6 * 1e-9


class TestBestResponses:
    def test_two_variable_vertex(self):
        # payoff (2, 1) with weights (2, 1), cap 1.5: oracle enumerates the
        # three candidate vertices of the constrained simplex
        game = ConstrainedGame(A=[[2.0], [1.0]], B=[[0.0], [0.0]],
                               r=[2.0, 1.0], j=[1.0], r_ave=1.5, j_ave=1.0)
        vertices = [np.array([0.0, 1.0]), np.array([0.5, 0.5])]
        payoff = np.array([2.0, 1.0])
        oracle = max(float(payoff @ v) for v in vertices)
        x, value = best_response_row(game, [1.0])
        assert value == pytest.approx(oracle, abs=1e-12)
        assert np.allclose(np.asarray(x), [0.5, 0.5], atol=1e-12)
        assert value == pytest.approx(1.5)

    def test_mp_zero_payoffs(self, mp):
        _, value = best_response_row(mp, [0.5, 0.5])
        assert value == pytest.approx(0.0, abs=1e-12)
        _, value = best_response_col(mp, [0.5, 0.5])
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_jx_row_indifference(self, jx_game):
        # C @ y is (1, 1, 1): every rate ties
        _, value = best_response_row(jx_game, [0.25, 0.25, 0.5, 0.0])
        assert value == pytest.approx(1.0, abs=1e-12)

    def test_jx_col_against_mix(self, jx_game):
        _, value = best_response_col(jx_game, [0.5, 0.5, 0.0])
        assert value == pytest.approx(0.625, abs=1e-12)

    def test_jx_col_against_lowest_rate(self, jx_game):
        # only the top power destroys the lowest rate; budget LP caps its
        # probability at 1.25 / 4
        _, value = best_response_col(jx_game, [0.0, 0.0, 1.0])
        assert value == pytest.approx(0.3125, abs=1e-12)

    def test_infeasible_cap(self, mp):
        game = ConstrainedGame(A=mp.A, B=mp.B, r=[2.0, 3.0], j=mp.j,
                               r_ave=1.0, j_ave=1.0)
        with pytest.raises(EmptyFeasibleSetError):
            best_response_row(game, [0.5, 0.5])

    def test_dominates_random_feasible_strategies(self):
        from congame import random_feasible_strategy
        rng = np.random.default_rng(17)
        for _ in range(4):
            game = random_constrained_game(rng, 4, 5)
            y = random_feasible_strategy(5, game.j, game.j_ave, rng)
            _, best = best_response_row(game, y)
            for _ in range(1000):
                x = random_feasible_strategy(4, game.r, game.r_ave, rng)
                assert best >= float(x @ game.A @ y) - 1e-9

    def test_unconstrained_reduction(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            game = random_constrained_game(rng, 4, 4, unconstrained=True)
            y = rng.dirichlet(np.ones(4))
            _, value = best_response_row(game, y)
            assert value == pytest.approx(float(np.max(game.A @ y)), abs=1e-9)


class TestNashGap:
    def test_mp_equilibrium(self, mp):
        gaps = nash_gap(mp, [0.5, 0.5], [0.5, 0.5])
        assert gaps == pytest.approx((0.0, 0.0), abs=1e-12)

    def test_mp_pure_profile(self, mp):
        # column player flips to payoff 1 from -1
        gaps = nash_gap(mp, [1.0, 0.0], [1.0, 0.0])
        assert gaps[0] == pytest.approx(0.0, abs=1e-12)
        assert gaps[1] == pytest.approx(2.0, abs=1e-12)

    def test_jx_fixture_profile(self, jx_game):
        gaps = nash_gap(jx_game, [0.5, 0.5, 0.0], [0.25, 0.25, 0.5, 0.0])
        assert gaps == pytest.approx((0.0, 0.0), abs=1e-9)

    def test_gaps_nonnegative_on_random_profiles(self):
        from congame import random_feasible_strategy
        rng = np.random.default_rng(31)
        game = random_constrained_game(rng, 3, 4)
        for _ in range(25):
            x = random_feasible_strategy(3, game.r, game.r_ave, rng)
            y = random_feasible_strategy(4, game.j, game.j_ave, rng)
            gr, gc = nash_gap(game, x, y)
            assert gr >= -1e-9
            assert gc >= -1e-9


def test_backend_reports_a_known_name():
    assert simplex_backend() in ("compiled", "interpreted")
