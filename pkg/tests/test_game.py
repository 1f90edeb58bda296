import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from congame import (
    ConstrainedGame,
    DimensionMismatchError,
    InvalidStrategyError,
    MixedStrategy,
    NegativeWeightError,
    NonFiniteEntryError,
    StrategyProfile,
    existence_condition,
    expected_payoffs,
    feasible_strategy,
    is_properly_constrained,
    validate_game,
)

from conftest import random_constrained_game


def bilinear_oracle(A, x, y):
    # independent double-loop evaluation of x'Ay
    total = 0.0
    for i in range(len(x)):
        for k in range(len(y)):
            total += x[i] * A[i][k] * y[k]
    return total


class TestValidateGame:
    def test_well_formed(self):
        game = validate_game({"A": [[1, -1], [-1, 1]], "B": [[-1, 1], [1, -1]],
                              "r": [1, 1], "j": [1, 1], "r_ave": 1, "j_ave": 1})
        assert game.shape == (2, 2)
        assert np.array_equal(game.B, -game.A)

    def test_weight_length_mismatch(self):
        with pytest.raises(DimensionMismatchError, match="r"):
            validate_game({"A": [[1, -1], [-1, 1]], "B": [[-1, 1], [1, -1]],
                           "r": [1, 1, 1], "j": [1, 1], "r_ave": 1, "j_ave": 1})

    def test_negative_weight(self):
        with pytest.raises(NegativeWeightError):
            validate_game({"A": [[1, -1], [-1, 1]], "B": [[-1, 1], [1, -1]],
                           "r": [1, -1], "j": [1, 1], "r_ave": 1, "j_ave": 1})

    def test_non_finite(self):
        with pytest.raises(NonFiniteEntryError):
            ConstrainedGame(A=[[np.nan, 0], [0, 1]], B=[[0, 0], [0, 0]],
                            r=[1, 1], j=[1, 1], r_ave=1, j_ave=1)

    def test_matrix_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            ConstrainedGame(A=[[1, 2]], B=[[1], [2]], r=[1], j=[1, 1],
                            r_ave=1, j_ave=1)


class TestMixedStrategy:
    def test_valid(self):
        s = MixedStrategy([0.25, 0.25, 0.5])
        assert len(s) == 3
        assert np.asarray(s).sum() == 1.0

    def test_rejects_bad_sum(self):
        with pytest.raises(InvalidStrategyError):
            MixedStrategy([0.7, 0.4])

    def test_rejects_negative(self):
        with pytest.raises(InvalidStrategyError):
            MixedStrategy([1.5, -0.5])

    def test_profile_dimension_check(self, mp):
        profile = StrategyProfile(x=MixedStrategy([0.5, 0.5]),
                                  y=MixedStrategy([0.5, 0.5]))
        assert profile.matches(mp)


class TestFeasibleStrategy:
    def test_boundary_equality(self):
        assert feasible_strategy([1, 2], 1.5, [0.5, 0.5])

    def test_cap_exceeded(self):
        assert not feasible_strategy([1, 2], 1.4, [0.5, 0.5])

    def test_jx_budget_boundary(self):
        # dot product 0*0.25 + 1*0.25 + 2*0.5 + 4*0 = 1.25 hits the cap
        assert feasible_strategy([0, 1, 2, 4], 1.25, [0.25, 0.25, 0.5, 0])

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            feasible_strategy([1, 2, 3], 1.0, [0.5, 0.5])

    def test_rejects_non_probability(self):
        assert not feasible_strategy([1, 2], 10.0, [0.9, 0.3])

    @given(cap=st.floats(0, 10), extra=st.floats(0, 10))
    @settings(max_examples=50, deadline=None)
    def test_monotone_in_cap(self, cap, extra):
        w = [0.5, 1.5, 3.0]
        p = [0.2, 0.5, 0.3]
        if feasible_strategy(w, cap, p):
            assert feasible_strategy(w, cap + extra, p)


class TestExpectedPayoffs:
    def test_pure_strategies_select_entries(self, mp):
        assert expected_payoffs(mp, [1, 0], [0, 1]) == (-1.0, 1.0)

    def test_symmetric_zero_sum_value(self, mp):
        assert expected_payoffs(mp, [0.5, 0.5], [0.5, 0.5]) == (0.0, 0.0)

    def test_jx_fixture_value(self, jx_game):
        x = [0.5, 0.5, 0.0]
        y = [0.25, 0.25, 0.5, 0.0]
        a, b = expected_payoffs(jx_game, x, y)
        assert a == pytest.approx(bilinear_oracle(jx_game.A, x, y), abs=1e-15)
        assert b == pytest.approx(bilinear_oracle(jx_game.B, x, y), abs=1e-15)
        assert (a, b) == (1.0, 0.625)

    def test_dimension_mismatch(self, mp):
        with pytest.raises(DimensionMismatchError):
            expected_payoffs(mp, [1, 0, 0], [0, 1])

    def test_pure_pairs_match_matrix(self):
        rng = np.random.default_rng(11)
        game = random_constrained_game(rng, 3, 4)
        for i in range(3):
            for k in range(4):
                x = np.eye(3)[i]
                y = np.eye(4)[k]
                assert expected_payoffs(game, x, y) == \
                    (game.A[i, k], game.B[i, k])

    def test_bilinearity(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            game = random_constrained_game(rng, 3, 3)
            x1 = rng.dirichlet(np.ones(3))
            x2 = rng.dirichlet(np.ones(3))
            y = rng.dirichlet(np.ones(3))
            lam = float(rng.uniform())
            mixed = lam * x1 + (1 - lam) * x2
            a_mixed, b_mixed = expected_payoffs(game, mixed, y)
            a1, b1 = expected_payoffs(game, x1, y)
            a2, b2 = expected_payoffs(game, x2, y)
            assert abs(a_mixed - (lam * a1 + (1 - lam) * a2)) <= 1e-12
            assert abs(b_mixed - (lam * b1 + (1 - lam) * b2)) <= 1e-12


class TestConstraintPredicates:
    def test_mp_reduces_to_standard(self, mp):
        assert not is_properly_constrained(mp)

    def test_jx_properly_constrained(self, jx_game):
        assert is_properly_constrained(jx_game)

    def test_strict_inequality_counts(self, mp):
        game = ConstrainedGame(A=mp.A, B=mp.B, r=mp.r, j=mp.j,
                               r_ave=1 - 1e-3, j_ave=1.0)
        assert is_properly_constrained(game)

    def test_unconstrained_games_accept_every_strategy(self):
        rng = np.random.default_rng(3)
        game = random_constrained_game(rng, 3, 3, unconstrained=True)
        assert not is_properly_constrained(game)
        for _ in range(50):
            p = rng.dirichlet(np.ones(3))
            assert feasible_strategy(game.r, game.r_ave, p)
            assert feasible_strategy(game.j, game.j_ave, p)

    def test_existence_mp(self, mp):
        assert existence_condition(mp)

    def test_existence_fails_below_cheapest(self, mp):
        game = ConstrainedGame(A=mp.A, B=mp.B, r=[2.0, 3.0], j=mp.j,
                               r_ave=1.0, j_ave=1.0)
        assert not existence_condition(game)

    def test_existence_jx_zero_power_action(self, jx_link):
        from congame import build_bimatrix_jamming_game
        game = build_bimatrix_jamming_game(jx_link, 0.0)
        assert existence_condition(game)
