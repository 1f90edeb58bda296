import numpy as np
import pytest

from congame import (
    ConstrainedGame,
    EquilibriumCertificate,
    InvalidStrategyError,
    QpPoint,
    equilibrium_payoffs_from_multipliers,
    kkt_check,
    nash_gap,
    recover_multipliers,
    solve_support_enumeration,
)

from conftest import random_constrained_game, record_certificate


def mp_cert(x=(0.5, 0.5), y=(0.5, 0.5), u=0.0, v=0.0, alpha=0.0, beta=0.0):
    return QpPoint(x=np.array(x), y=np.array(y), u=u, v=v,
                   alpha=alpha, beta=beta)


class TestCertificateTypes:
    def test_qp_point_allows_infeasible_values(self):
        # feasibility is a query on QpPoint, not an invariant
        QpPoint(x=np.array([0.7, 0.4]), y=np.array([0.5, 0.5]),
                u=-1.0, v=0.0, alpha=0.0, beta=0.0)

    def test_certificate_rejects_negative_multiplier(self):
        with pytest.raises(InvalidStrategyError):
            EquilibriumCertificate(x=np.array([0.5, 0.5]),
                                   y=np.array([0.5, 0.5]),
                                   u=-1.0, v=0.0, alpha=0.0, beta=0.0)

    def test_certificate_rejects_non_probability(self):
        with pytest.raises(InvalidStrategyError):
            EquilibriumCertificate(x=np.array([0.7, 0.4]),
                                   y=np.array([0.5, 0.5]),
                                   u=0.0, v=0.0, alpha=0.0, beta=0.0)


class TestKktCheck:
    def test_mp_equilibrium_passes_exactly(self, mp):
        report = kkt_check(mp, mp_cert(), tol=1e-12)
        assert report.passed
        assert report.max_violation == 0.0
        assert report.n_passed == 14

    def test_jx_fixture_passes_exactly(self, jx_game, jx_cert):
        report = kkt_check(jx_game, jx_cert, tol=1e-12)
        assert report.passed
        assert report.max_violation == 0.0
        # hand-computed tight structure: C y = (1,1,1) so every row of the
        # dominance condition is exactly tight, and the column condition is
        # (0, 0, 0, -1)
        assert report["I.4"].residual == 0.0
        assert report["II.4"].residual == 0.0
        assert report["II.2"].residual == 0.0
        record_certificate(jx_game, jx_cert)

    def test_perturbed_strategy_fails_column_dominance(self, mp):
        # x'B = (-0.2, 0.2): the second column exceeds the zero bound
        report = kkt_check(mp, mp_cert(x=(0.6, 0.4)))
        assert not report.passed
        assert "II.4" in report.failed_names()
        assert report["II.4"].residual == pytest.approx(0.2, abs=1e-15)

    def test_relative_tolerance_scales(self, mp):
        big = ConstrainedGame(A=1e6 * np.asarray(mp.A), B=-1e6 * np.asarray(mp.A),
                              r=mp.r, j=mp.j, r_ave=1.0, j_ave=1.0)
        point = mp_cert(x=(0.5 + 1e-8, 0.5 - 1e-8))
        assert not kkt_check(big, point, tol=1e-8).passed
        assert kkt_check(big, point, tol=1e-8, relative=True).passed

    def test_failed_conditions_are_data_not_errors(self, mp):
        report = kkt_check(mp, mp_cert(u=-5.0))
        assert not report["I.7"].passed
        assert report["I.7"].residual == 5.0


class TestRecoverMultipliers:
    def test_mp_equilibrium_recovers_zeros(self, mp):
        cert = recover_multipliers(mp, [0.5, 0.5], [0.5, 0.5])
        assert cert is not None
        assert (cert.u, cert.v, cert.alpha, cert.beta) == (0.0, 0.0, 0.0, 0.0)
        record_certificate(mp, cert)

    def test_jx_fixture_recovers_known_multipliers(self, jx_game):
        cert = recover_multipliers(jx_game, [0.5, 0.5, 0.0],
                                   [0.25, 0.25, 0.5, 0.0])
        assert cert is not None
        assert cert.u == pytest.approx(0.0, abs=1e-12)
        assert cert.v == pytest.approx(0.5, abs=1e-12)
        assert cert.alpha == pytest.approx(1.0, abs=1e-12)
        assert cert.beta == pytest.approx(0.0, abs=1e-12)
        record_certificate(jx_game, cert)

    def test_non_equilibrium_yields_none(self, mp):
        assert recover_multipliers(mp, [1.0, 0.0], [1.0, 0.0]) is None

    def test_roundtrip_on_enumerated_equilibria(self):
        rng = np.random.default_rng(100)
        checked = 0
        for _ in range(15):
            game = random_constrained_game(rng, 3, 3)
            for entry in solve_support_enumeration(game).equilibria:
                cert = recover_multipliers(game, entry.certificate.x,
                                           entry.certificate.y)
                assert cert is not None
                assert kkt_check(game, cert, tol=1e-8).passed
                record_certificate(game, cert)
                checked += 1
        assert checked >= 15

    def test_complementary_slackness_structure(self):
        rng = np.random.default_rng(200)
        seen_slack = 0
        for _ in range(20):
            game = random_constrained_game(rng, 3, 3)
            for entry in solve_support_enumeration(game).equilibria:
                cert = entry.certificate
                if game.r_ave - float(game.r @ cert.x) > 1e-8:
                    seen_slack += 1
                    assert cert.u <= 1e-8
                if game.j_ave - float(game.j @ cert.y) > 1e-8:
                    assert cert.v <= 1e-8
        assert seen_slack > 0

    def test_agreement_with_nash_gap(self):
        # the certificate test and the deviation-gap test must agree
        from congame import random_feasible_strategy
        rng = np.random.default_rng(300)
        agree_eq = agree_noneq = 0
        for _ in range(10):
            game = random_constrained_game(rng, 3, 3)
            result = solve_support_enumeration(game)
            for entry in result.equilibria:
                gaps = nash_gap(game, entry.certificate.x, entry.certificate.y)
                assert max(gaps) <= 1e-7
                agree_eq += 1
            x = random_feasible_strategy(3, game.r, game.r_ave, rng)
            y = random_feasible_strategy(3, game.j, game.j_ave, rng)
            if max(nash_gap(game, x, y)) > 1e-6:
                assert recover_multipliers(game, x, y) is None
                agree_noneq += 1
        assert agree_eq > 0 and agree_noneq > 0


class TestPayoffsFromMultipliers:
    def test_mp_zero(self, mp):
        assert equilibrium_payoffs_from_multipliers(mp, mp_cert()) == (0.0, 0.0)

    def test_jx_values(self, jx_game, jx_cert):
        a, b = equilibrium_payoffs_from_multipliers(jx_game, jx_cert)
        assert a == pytest.approx(1.0, abs=1e-15)
        assert b == pytest.approx(0.5 * 1.25, abs=1e-15)

    def test_formula_arithmetic(self):
        game = ConstrainedGame(A=[[0.0]], B=[[0.0]], r=[1.0], j=[1.0],
                               r_ave=3.0, j_ave=1.0)
        point = QpPoint(x=np.array([1.0]), y=np.array([1.0]),
                        u=2.0, v=0.0, alpha=-1.0, beta=0.0)
        a, _ = equilibrium_payoffs_from_multipliers(game, point)
        assert a == 5.0
