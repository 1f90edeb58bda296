"""Shared fixtures and the suite-wide certificate ledger.

Every certificate produced while testing is routed through
``record_certificate``, which immediately asserts the multiplier payoff
identity (expected payoffs equal u*r_ave + alpha and v*j_ave + beta) and
stores the entry so the acceptance suite can re-sweep the whole collection.
"""

from __future__ import annotations

import numpy as np
import pytest

from congame import (
    ConstrainedGame,
    equilibrium_payoffs_from_multipliers,
    expected_payoffs,
)
from congame import fixtures

CERT_LEDGER: list[tuple[ConstrainedGame, object]] = []

PAYOFF_IDENTITY_TOL = 1e-8


def record_certificate(game: ConstrainedGame, cert) -> None:
    """Check the payoff identity on a certificate and remember it."""
    a, b = expected_payoffs(game, cert.x, cert.y)
    a_mul, b_mul = equilibrium_payoffs_from_multipliers(game, cert)
    assert abs(a - a_mul) <= PAYOFF_IDENTITY_TOL
    assert abs(b - b_mul) <= PAYOFF_IDENTITY_TOL
    CERT_LEDGER.append((game, cert))


def random_constrained_game(rng: np.random.Generator, m: int, n: int,
                            unconstrained: bool = False) -> ConstrainedGame:
    """A random game whose caps always admit the cheapest action."""
    A = rng.uniform(-1.0, 1.0, (m, n))
    B = rng.uniform(-1.0, 1.0, (m, n))
    r = rng.uniform(0.0, 2.0, m)
    j = rng.uniform(0.0, 2.0, n)
    if unconstrained:
        r_ave = float(np.max(r)) + 1.0
        j_ave = float(np.max(j)) + 1.0
    else:
        r_ave = float(rng.uniform(np.min(r), np.max(r) + 0.5))
        j_ave = float(rng.uniform(np.min(j), np.max(j) + 0.5))
    return ConstrainedGame(A=A, B=B, r=r, j=j, r_ave=r_ave, j_ave=j_ave)


@pytest.fixture
def mp():
    return fixtures.matching_pennies()


@pytest.fixture
def pd():
    return fixtures.prisoners_dilemma()


@pytest.fixture
def bos():
    return fixtures.battle_of_the_sexes()


@pytest.fixture
def jx_link():
    return fixtures.jx_link()


@pytest.fixture
def jx_game():
    return fixtures.jx_game()


@pytest.fixture
def jx_cert():
    return fixtures.jx_certificate()
