"""Equilibrium certificates and their verification.

A strategy pair (x, y) of a constrained bimatrix game is a Nash equilibrium
exactly when four scalar multipliers (u, v, alpha, beta) exist making
fourteen linear conditions hold — seven per player, mirroring each other:

    I.1   sum(x) == 1                  II.1  sum(y) == 1
    I.2   r @ x <= r_ave               II.2  j @ y <= j_ave
    I.3   x >= 0                       II.3  y >= 0
    I.4   A y  <= u r + alpha          II.4  x'B  <= v j + beta
    I.5   x'Ay == u r_ave + alpha      II.5  x'By == v j_ave + beta
    I.6   u (r@x - r_ave) == 0         II.6  v (j@y - j_ave) == 0
    I.7   u >= 0                       II.7  v >= 0

Conditions 1-3 are primal feasibility of each player's best-response linear
program, 4 and 7 are dual feasibility, and 5-6 are complementary slackness.
Because each player's program is linear, the system is both necessary and
sufficient, so a passing report is a proof of equilibrium, and the
equilibrium payoffs equal (u*r_ave + alpha, v*j_ave + beta).

``recover_multipliers`` turns a bare strategy pair into a full certificate
(or the verdict that none exists) by solving a small feasibility LP over the
four multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InvalidStrategyError
from .game import ConstrainedGame, _vec, is_probability_vector
from .lp import LpProblem, LpStatus, lp_solve

DEFAULT_KKT_TOL = 1e-8


@dataclass(frozen=True)
class QpPoint:
    """An unvalidated point (x, y, u, v, alpha, beta).

    This is the decision vector of the equilibrium quadratic program; it may
    violate any constraint (feasibility is a question you ask about it, not
    an invariant), which is why it checks shapes and finiteness only.
    """

    x: np.ndarray
    y: np.ndarray
    u: float
    v: float
    alpha: float
    beta: float

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=np.float64))
        y = np.atleast_1d(np.asarray(self.y, dtype=np.float64))
        for name, val in (("x", x), ("y", y)):
            if not np.all(np.isfinite(val)):
                raise InvalidStrategyError(f"{name} has a non-finite entry")
            val.setflags(write=False)
        for name in ("u", "v", "alpha", "beta"):
            if not np.isfinite(getattr(self, name)):
                raise InvalidStrategyError(f"{name} must be finite")
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def check_shape(self, game: ConstrainedGame) -> None:
        if self.x.shape[0] != game.m or self.y.shape[0] != game.n:
            raise DimensionMismatchError(
                f"point ({self.x.shape[0]}, {self.y.shape[0]}) does not "
                f"match game shape {game.shape}")


class EquilibriumCertificate(QpPoint):
    """A QpPoint that additionally satisfies the certificate invariants:
    x and y are probability vectors and u, v are nonnegative (within tol).
    """

    INVARIANT_TOL = DEFAULT_KKT_TOL

    def __post_init__(self):
        super().__post_init__()
        tol = self.INVARIANT_TOL
        if not is_probability_vector(self.x, tol):
            raise InvalidStrategyError("certificate x is not a probability vector")
        if not is_probability_vector(self.y, tol):
            raise InvalidStrategyError("certificate y is not a probability vector")
        if self.u < -tol or self.v < -tol:
            raise InvalidStrategyError("certificate multipliers u, v must be >= 0")


# (name, kind): "eq" conditions need |residual| <= tol, "le" need residual <= tol
CONDITION_ORDER = (
    ("I.1", "eq"), ("I.2", "le"), ("I.3", "le"), ("I.4", "le"),
    ("I.5", "eq"), ("I.6", "eq"), ("I.7", "le"),
    ("II.1", "eq"), ("II.2", "le"), ("II.3", "le"), ("II.4", "le"),
    ("II.5", "eq"), ("II.6", "eq"), ("II.7", "le"),
)

CONDITION_TEXT = {
    "I.1": "sum(x) - 1 == 0",
    "I.2": "r@x - r_ave <= 0",
    "I.3": "-x <= 0",
    "I.4": "A y - u r - alpha <= 0",
    "I.5": "x'Ay - u r_ave - alpha == 0",
    "I.6": "u (r@x - r_ave) == 0",
    "I.7": "u >= 0",
    "II.1": "sum(y) - 1 == 0",
    "II.2": "j@y - j_ave <= 0",
    "II.3": "-y <= 0",
    "II.4": "x'B - v j - beta <= 0",
    "II.5": "x'By - v j_ave - beta == 0",
    "II.6": "v (j@y - j_ave) == 0",
    "II.7": "v >= 0",
}


@dataclass(frozen=True)
class ConditionResult:
    name: str
    kind: str
    residual: float
    passed: bool

    def describe(self) -> str:
        return CONDITION_TEXT[self.name]

    @property
    def violation(self) -> float:
        """How far the condition fails: |residual| for equalities, the
        positive part for inequalities (slack does not count against it)."""
        if self.kind == "eq":
            return abs(self.residual)
        return max(self.residual, 0.0)


@dataclass(frozen=True)
class KktReport:
    """Signed residuals and pass flags for all fourteen conditions.

    Residuals are kept signed (a ``le`` residual of -0.3 means 0.3 of slack)
    so callers can assert tightness, not just pass/fail. ``max_violation``
    is the quantity compared against the tolerance.
    """

    conditions: tuple[ConditionResult, ...]
    tol: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def max_violation(self) -> float:
        return max(c.violation for c in self.conditions)

    @property
    def max_abs_residual(self) -> float:
        return max(abs(c.residual) for c in self.conditions)

    @property
    def n_passed(self) -> int:
        return sum(c.passed for c in self.conditions)

    def __getitem__(self, name: str) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.conditions if not c.passed)

    def lines(self) -> list[str]:
        out = []
        for c in self.conditions:
            mark = "PASS" if c.passed else "FAIL"
            out.append(f"({c.name})  {c.describe():34s} residual={c.residual: .3e}  {mark}")
        verdict = "PASS" if self.passed else "FAIL"
        out.append(f"{verdict} {self.n_passed}/14  max violation={self.max_violation:.3e}")
        return out


def _scaled_tol(game: ConstrainedGame, tol: float) -> float:
    scale = max(1.0, float(np.max(np.abs(game.A))), float(np.max(np.abs(game.B))),
                float(np.max(game.r, initial=0.0)), float(np.max(game.j, initial=0.0)),
                game.r_ave, game.j_ave)
    return tol * scale


def kkt_check(game: ConstrainedGame, point: QpPoint,
              tol: float = DEFAULT_KKT_TOL, relative: bool = False) -> KktReport:
    """Evaluate every equilibrium condition literally and report residuals.

    Failed conditions are data, not errors: the report carries one signed
    residual per condition and an overall pass flag. With ``relative=True``
    the tolerance is scaled by the largest magnitude among the game's
    matrices, weights, and caps.
    """
    point.check_shape(game)
    if relative:
        tol = _scaled_tol(game, tol)
    x, y = point.x, point.y
    u, v, alpha, beta = point.u, point.v, point.alpha, point.beta
    Ay = game.A @ y
    xB = x @ game.B
    rx = float(game.r @ x)
    jy = float(game.j @ y)
    a_val = float(x @ Ay)
    b_val = float(xB @ y)

    residuals = {
        "I.1": float(np.sum(x)) - 1.0,
        "I.2": rx - game.r_ave,
        "I.3": float(np.max(-x)),
        "I.4": float(np.max(Ay - u * game.r - alpha)),
        "I.5": a_val - u * game.r_ave - alpha,
        "I.6": u * (rx - game.r_ave),
        "I.7": -u,
        "II.1": float(np.sum(y)) - 1.0,
        "II.2": jy - game.j_ave,
        "II.3": float(np.max(-y)),
        "II.4": float(np.max(xB - v * game.j - beta)),
        "II.5": b_val - v * game.j_ave - beta,
        "II.6": v * (jy - game.j_ave),
        "II.7": -v,
    }
    results = []
    for name, kind in CONDITION_ORDER:
        res = residuals[name]
        ok = abs(res) <= tol if kind == "eq" else res <= tol
        results.append(ConditionResult(name=name, kind=kind,
                                       residual=res, passed=bool(ok)))
    return KktReport(conditions=tuple(results), tol=tol)


def recover_multipliers(game: ConstrainedGame, x, y,
                        tol: float = DEFAULT_KKT_TOL) -> EquilibriumCertificate | None:
    """Find multipliers certifying (x, y), or None if it is no equilibrium.

    Existence of (u, v, alpha, beta) satisfying the dual-side conditions is
    itself the equilibrium test, so this poses them as a feasibility LP over
    the four multipliers with (x, y) fixed. Minimizing u + v picks a
    deterministic representative when degenerate supports admit a range of
    multipliers. The returned certificate always re-passes ``kkt_check`` at
    ``tol``; an infeasible LP (or a failed re-check) yields None.
    """
    xv = _vec(x)
    yv = _vec(y)
    if xv.shape[0] != game.m or yv.shape[0] != game.n:
        raise DimensionMismatchError("profile does not match game shape")
    if not (is_probability_vector(xv, tol) and is_probability_vector(yv, tol)):
        return None
    rx = float(game.r @ xv)
    jy = float(game.j @ yv)
    if rx > game.r_ave + tol or jy > game.j_ave + tol:
        return None

    Ay = game.A @ yv
    xB = xv @ game.B
    a_val = float(xv @ Ay)
    b_val = float(xB @ yv)

    # variables: [u, v, alpha, beta]; alpha and beta are free
    A_le = np.zeros((game.m + game.n, 4))
    b_le = np.zeros(game.m + game.n)
    A_le[:game.m, 0] = -game.r
    A_le[:game.m, 2] = -1.0
    b_le[:game.m] = -Ay
    A_le[game.m:, 1] = -game.j
    A_le[game.m:, 3] = -1.0
    b_le[game.m:] = -xB

    eq_rows = [[game.r_ave, 0.0, 1.0, 0.0], [0.0, game.j_ave, 0.0, 1.0]]
    eq_rhs = [a_val, b_val]
    if game.r_ave - rx > tol:  # cap slack forces u = 0 by complementarity
        eq_rows.append([1.0, 0.0, 0.0, 0.0])
        eq_rhs.append(0.0)
    if game.j_ave - jy > tol:
        eq_rows.append([0.0, 1.0, 0.0, 0.0])
        eq_rhs.append(0.0)

    problem = LpProblem(
        c=np.array([-1.0, -1.0, 0.0, 0.0]),
        A_eq=np.array(eq_rows), b_eq=np.array(eq_rhs),
        A_le=A_le, b_le=b_le,
        lower=np.array([0.0, 0.0, -np.inf, -np.inf]),
    )
    sol = lp_solve(problem)
    if sol.status != LpStatus.OPTIMAL:
        return None
    u, v, alpha, beta = sol.z
    cert = EquilibriumCertificate(x=xv, y=yv, u=u, v=v, alpha=alpha, beta=beta)
    if not kkt_check(game, cert, tol).passed:
        return None
    return cert


def equilibrium_payoffs_from_multipliers(
        game: ConstrainedGame,
        cert: QpPoint) -> tuple[float, float]:
    """Equilibrium payoffs implied by the multipliers alone.

    For a passing certificate these equal the bilinear payoffs: the row
    player receives ``u*r_ave + alpha`` and the column player
    ``v*j_ave + beta``.
    """
    return (cert.u * game.r_ave + cert.alpha,
            cert.v * game.j_ave + cert.beta)
