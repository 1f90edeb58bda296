"""Canonical example games used throughout tests and documentation.

``JX`` is the hand-checkable jamming instance: three abstract rates
(4, 2, 1) against four abstract jamming powers (0, 1, 2, 4), with the
jammer's budget at its threshold value 1.25. Its equilibrium certificate
(x = (1/2, 1/2, 0), y = (1/4, 1/4, 1/2, 0), u = 0, v = 1/2, alpha = 1,
beta = 0) has every residual exactly zero in double precision.
"""

from __future__ import annotations

import numpy as np

from .game import ConstrainedGame
from .jamming import JammingLink, build_bimatrix_jamming_game
from .kkt import EquilibriumCertificate


def matching_pennies() -> ConstrainedGame:
    """Zero-sum 2x2 with unique mixed equilibrium at (1/2, 1/2)."""
    A = np.array([[1.0, -1.0], [-1.0, 1.0]])
    return ConstrainedGame(A=A, B=-A, r=[1.0, 1.0], j=[1.0, 1.0],
                           r_ave=1.0, j_ave=1.0)


def prisoners_dilemma() -> ConstrainedGame:
    """Dominance-solvable 2x2; the unique equilibrium is (defect, defect)."""
    return ConstrainedGame(A=[[3.0, 0.0], [5.0, 1.0]],
                           B=[[3.0, 5.0], [0.0, 1.0]],
                           r=[1.0, 1.0], j=[1.0, 1.0], r_ave=1.0, j_ave=1.0)


def battle_of_the_sexes() -> ConstrainedGame:
    """Coordination 2x2 with two pure equilibria and one mixed one."""
    return ConstrainedGame(A=[[2.0, 0.0], [0.0, 1.0]],
                           B=[[1.0, 0.0], [0.0, 2.0]],
                           r=[1.0, 1.0], j=[1.0, 1.0], r_ave=1.0, j_ave=1.0)


def jx_link() -> JammingLink:
    """Abstract jamming link with rates (4, 2, 1) and powers (0, 1, 2, 4)."""
    return JammingLink.from_powers([4.0, 2.0, 1.0], [0.0, 1.0, 2.0, 4.0])


def jx_game(j_ave: float = 1.25) -> ConstrainedGame:
    """The bimatrix jamming game of the JX link, default at its threshold."""
    return build_bimatrix_jamming_game(jx_link(), j_ave)


def jx_certificate() -> EquilibriumCertificate:
    """The hand-verified equilibrium certificate of jx_game(1.25)."""
    return EquilibriumCertificate(
        x=np.array([0.5, 0.5, 0.0]),
        y=np.array([0.25, 0.25, 0.5, 0.0]),
        u=0.0, v=0.5, alpha=1.0, beta=0.0,
    )
