"""Dense linear programming and the two best-response programs.

The solver is a self-contained two-phase primal simplex with Bland's rule:
deterministic (identical inputs give bit-identical outputs), tiny, and
auditable, which is what certificate checking needs. Games here produce LPs
with at most a few dozen variables, so a dense tableau beats any sparse or
interior-point machinery on both simplicity and constant factors.

The pivoting loops live in ``congame._simplex`` and run compiled when the
extension was built, interpreted otherwise; see ``simplex_backend()``.
"""

from __future__ import annotations

import importlib.util
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from . import _simplex
from .errors import (
    DimensionMismatchError,
    EmptyFeasibleSetError,
    InvalidStrategyError,
    LpNumericalError,
    NonFiniteEntryError,
)
from .game import ConstrainedGame, MixedStrategy, _vec, feasible_strategy

DEFAULT_OPT_TOL = 1e-9
DEFAULT_PIVOT_TOL = 1e-12
DEFAULT_FEAS_TOL = 1e-9
MAX_ITERATIONS = 50_000


def simplex_backend() -> str:
    """Name of the kernel in use: ``"compiled"`` or ``"interpreted"``."""
    return "compiled" if _simplex.COMPILED else "interpreted"


def interpreted_kernel():
    """Load the interpreted kernel explicitly (for benchmarks and tests).

    The normal import picks the compiled extension when present; this always
    executes the pure-Python source, regardless of what is installed.
    """
    source = Path(__file__).with_name("_simplex.py")
    spec = importlib.util.spec_from_file_location("congame._simplex_pure", source)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpProblem:
    """Maximize ``c @ z`` subject to equalities, inequalities, and bounds.

    Attributes:
        c: objective coefficients, length nv.
        A_eq, b_eq: equality constraints ``A_eq @ z == b_eq``; may be empty.
        A_le, b_le: inequality constraints ``A_le @ z <= b_le``; may be empty.
        lower: per-variable lower bounds, default 0; ``-inf`` marks a free
            variable. Upper bounds are expressed as rows of ``A_le``.
    """

    c: np.ndarray
    A_eq: np.ndarray = None
    b_eq: np.ndarray = None
    A_le: np.ndarray = None
    b_le: np.ndarray = None
    lower: np.ndarray = None

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.c, dtype=np.float64))
        nv = c.shape[0]

        def norm(A, b, name):
            if A is None:
                return np.zeros((0, nv)), np.zeros(0)
            A = np.atleast_2d(np.asarray(A, dtype=np.float64))
            b = np.atleast_1d(np.asarray(b if b is not None else [], dtype=np.float64))
            if A.shape[1] != nv or A.shape[0] != b.shape[0]:
                raise DimensionMismatchError(
                    f"{name} is {A.shape} with rhs length {b.shape[0]}; "
                    f"expected {nv} columns and matching rhs")
            if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
                raise NonFiniteEntryError(f"{name} contains a non-finite entry")
            return A, b

        A_eq, b_eq = norm(self.A_eq, self.b_eq, "A_eq")
        A_le, b_le = norm(self.A_le, self.b_le, "A_le")
        if self.lower is None:
            lower = np.zeros(nv)
        else:
            lower = np.atleast_1d(np.asarray(self.lower, dtype=np.float64))
            if lower.shape != (nv,):
                raise DimensionMismatchError("lower bounds length mismatch")
            if np.any(np.isnan(lower)) or np.any(lower == np.inf):
                raise NonFiniteEntryError("lower bounds must be finite or -inf")
        if not np.all(np.isfinite(c)):
            raise NonFiniteEntryError("objective contains a non-finite entry")
        for name, value in (("c", c), ("A_eq", A_eq), ("b_eq", b_eq),
                            ("A_le", A_le), ("b_le", b_le), ("lower", lower)):
            object.__setattr__(self, name, value)

    @property
    def n_vars(self) -> int:
        return self.c.shape[0]


@dataclass(frozen=True)
class LpSolution:
    """Outcome of ``lp_solve``.

    For OPTIMAL solutions ``z`` is a basic optimal point, ``value == c @ z``,
    and all constraints hold within 1e-9. ``basis`` lists the basic columns
    of the internal canonical form in row order; it exists so that two runs
    can be audited for determinism, not for interpretation.
    """

    status: LpStatus
    z: np.ndarray | None = None
    value: float | None = None
    basis: tuple[int, ...] = field(default_factory=tuple)


def _canonicalize(p: LpProblem):
    """Rewrite the problem with all variables >= 0 and rows b >= 0.

    Layout: original variables first (shifted by finite lower bounds), then
    one negative part per free variable, then one slack per inequality row,
    then artificials for rows whose slack cannot seed the basis.
    """
    nv = p.n_vars
    free = np.isneginf(p.lower)
    shift = np.where(free, 0.0, p.lower)

    b_eq = p.b_eq - p.A_eq @ shift if p.A_eq.size else p.b_eq.copy()
    b_le = p.b_le - p.A_le @ shift if p.A_le.size else p.b_le.copy()

    n_eq, n_le = p.A_eq.shape[0], p.A_le.shape[0]
    n_rows = n_eq + n_le
    free_idx = np.flatnonzero(free)
    n_free = free_idx.shape[0]
    slack_start = nv + n_free
    art_start = slack_start + n_le

    body = np.zeros((n_rows, art_start))
    rhs = np.concatenate([b_eq, b_le])
    body[:n_eq, :nv] = p.A_eq
    body[n_eq:, :nv] = p.A_le
    # negative parts of free variables
    for k, i in enumerate(free_idx):
        body[:, nv + k] = -body[:, i]
    # slacks
    for k in range(n_le):
        body[n_eq + k, slack_start + k] = 1.0

    flipped = rhs < 0.0
    body[flipped] *= -1.0
    rhs[flipped] = -rhs[flipped]

    # initial basis: an unflipped inequality row starts on its slack,
    # anything else gets an artificial
    basis = np.empty(n_rows, dtype=np.intp)
    art_cols = []
    for i in range(n_rows):
        if i >= n_eq and not flipped[i]:
            basis[i] = slack_start + (i - n_eq)
        else:
            basis[i] = art_start + len(art_cols)
            art_cols.append(i)
    n_art = len(art_cols)

    tab = np.zeros((n_rows + 1, art_start + n_art + 1))
    tab[:n_rows, :art_start] = body
    tab[:n_rows, -1] = rhs
    for k, i in enumerate(art_cols):
        tab[i, art_start + k] = 1.0

    c_canon = np.zeros(art_start + n_art)
    c_canon[:nv] = p.c
    c_canon[nv:slack_start] = -p.c[free_idx]
    return tab, basis, c_canon, art_start, free_idx, shift


def lp_solve(problem: LpProblem, *, opt_tol: float = DEFAULT_OPT_TOL,
             pivot_tol: float = DEFAULT_PIVOT_TOL,
             feas_tol: float = DEFAULT_FEAS_TOL) -> LpSolution:
    """Solve a dense LP with two-phase primal simplex under Bland's rule.

    Deterministic: identical input bits produce identical output bits.
    Raises LpNumericalError when every candidate pivot in an improving
    column falls below ``pivot_tol`` (reported rather than risking a wrong
    answer), and never raises for ordinary infeasible/unbounded problems.
    """
    tab, basis, c_canon, art_start, free_idx, shift = _canonicalize(problem)
    n_rows = tab.shape[0] - 1
    n_cols = tab.shape[1] - 1

    # phase 1: maximize minus the sum of artificials
    if n_rows:
        tab[n_rows, art_start:n_cols] = -1.0
        _simplex.eliminate_basics(tab, basis, n_rows, n_cols)
        status = _simplex.simplex_loop(tab, basis, n_rows, n_cols, art_start,
                                       opt_tol, pivot_tol, MAX_ITERATIONS)
        if status in (_simplex.NO_PIVOT, _simplex.ITERATION_LIMIT,
                      _simplex.UNBOUNDED):
            raise LpNumericalError(f"phase-1 pivot breakdown (status {status})")
        if tab[n_rows, n_cols] > feas_tol:
            return LpSolution(status=LpStatus.INFEASIBLE)
        _simplex.drive_out(tab, basis, n_rows, n_cols, art_start, pivot_tol)

    # phase 2: the real objective over non-artificial columns
    tab[n_rows, :] = 0.0
    tab[n_rows, :art_start] = c_canon[:art_start]
    _simplex.eliminate_basics(tab, basis, n_rows, n_cols)
    status = _simplex.simplex_loop(tab, basis, n_rows, n_cols, art_start,
                                   opt_tol, pivot_tol, MAX_ITERATIONS)
    if status == _simplex.UNBOUNDED:
        return LpSolution(status=LpStatus.UNBOUNDED)
    if status != _simplex.OPTIMAL:
        raise LpNumericalError(f"phase-2 pivot breakdown (status {status})")

    z_canon = np.zeros(n_cols)
    for rview in range(n_rows):
        z_canon[basis[rview]] = tab[rview, n_cols]
    nv = problem.n_vars
    z = z_canon[:nv].copy()
    for k, i in enumerate(free_idx):
        z[i] -= z_canon[nv + k]
    z += shift

    _check_solution(problem, z, feas_tol)
    value = float(problem.c @ z)
    return LpSolution(status=LpStatus.OPTIMAL, z=z, value=value,
                      basis=tuple(int(b) for b in basis))


def _check_solution(p: LpProblem, z: np.ndarray, tol: float) -> None:
    # defensive: a returned optimum must actually satisfy the constraints
    if p.A_eq.size and np.max(np.abs(p.A_eq @ z - p.b_eq)) > tol:
        raise LpNumericalError("equality residual above tolerance")
    if p.A_le.size and np.max(p.A_le @ z - p.b_le) > tol:
        raise LpNumericalError("inequality residual above tolerance")
    bounded = ~np.isneginf(p.lower)
    if np.any(z[bounded] < p.lower[bounded] - tol):
        raise LpNumericalError("lower bound violated")


def _best_response(payoff: np.ndarray, weights: np.ndarray, cap: float,
                   strategy_tol: float) -> tuple[np.ndarray, float]:
    """Maximize ``payoff @ p`` over probability vectors with ``weights @ p <= cap``."""
    k = payoff.shape[0]
    problem = LpProblem(
        c=payoff,
        A_eq=np.ones((1, k)), b_eq=np.ones(1),
        A_le=weights.reshape(1, k), b_le=np.array([cap]),
    )
    sol = lp_solve(problem)
    if sol.status == LpStatus.INFEASIBLE:
        raise EmptyFeasibleSetError(
            f"cap {cap} is below the cheapest action weight "
            f"{float(np.min(weights))}")
    if sol.status != LpStatus.OPTIMAL:
        raise LpNumericalError(f"best response LP ended {sol.status.value}")
    return sol.z, sol.value


def best_response_row(game: ConstrainedGame, y,
                      tol: float = DEFAULT_FEAS_TOL) -> tuple[MixedStrategy, float]:
    """Row player's constrained best response against column strategy y.

    Returns a maximizer of ``x @ A @ y`` over the row player's constrained
    simplex, and its value. With multiple optimal vertices the result is the
    basic solution Bland's rule reaches from the deterministic phase-1 basis,
    one representative of the optimal face.
    """
    yv = _vec(y)
    if yv.shape[0] != game.n:
        raise DimensionMismatchError("y does not match the game's columns")
    if not feasible_strategy(game.j, game.j_ave, yv, tol):
        raise InvalidStrategyError("y is not feasible for the column player")
    x, value = _best_response(game.A @ yv, game.r, game.r_ave, tol)
    return MixedStrategy(x, tol=1e-7), value


def best_response_col(game: ConstrainedGame, x,
                      tol: float = DEFAULT_FEAS_TOL) -> tuple[MixedStrategy, float]:
    """Column player's constrained best response against row strategy x."""
    xv = _vec(x)
    if xv.shape[0] != game.m:
        raise DimensionMismatchError("x does not match the game's rows")
    if not feasible_strategy(game.r, game.r_ave, xv, tol):
        raise InvalidStrategyError("x is not feasible for the row player")
    y, value = _best_response(game.B.T @ xv, game.j, game.j_ave, tol)
    return MixedStrategy(y, tol=1e-7), value


def nash_gap(game: ConstrainedGame, x, y) -> tuple[float, float]:
    """Per-player improvement available by unilateral deviation.

    Returns ``(best_row_value - x'Ay, best_col_value - x'By)``. Both gaps are
    nonnegative up to LP tolerance, and both vanish exactly at constrained
    Nash equilibria.
    """
    xv = _vec(x)
    yv = _vec(y)
    _, row_best = best_response_row(game, yv)
    _, col_best = best_response_col(game, xv)
    return (row_best - float(xv @ game.A @ yv),
            col_best - float(xv @ game.B @ yv))
