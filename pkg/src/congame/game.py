"""Core model of constrained bimatrix games.

A constrained bimatrix game extends a standard two-player game (payoff
matrices ``A`` for the row player and ``B`` for the column player) with one
linear cap per player: mixed strategies ``x`` and ``y`` must satisfy
``r @ x <= r_ave`` and ``j @ y <= j_ave`` in addition to being probability
vectors. Weights ``r``, ``j`` are nonnegative per-action costs (rates,
powers, ...) and the caps bound the average cost of a strategy.

All values are immutable after construction and every function here is pure,
so games and strategies can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidStrategyError,
    NegativeWeightError,
    NonFiniteEntryError,
    SchemaError,
)

DEFAULT_TOL = 1e-9


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.setflags(write=False)
    return a


def _require_finite(name: str, a: np.ndarray) -> None:
    if not np.all(np.isfinite(a)):
        raise NonFiniteEntryError(f"{name} contains a non-finite entry")


@dataclass(frozen=True)
class ConstrainedGame:
    """A two-player game with per-player average-cost caps.

    Attributes:
        A: m-by-n payoff matrix of the row player.
        B: m-by-n payoff matrix of the column player.
        r: length-m nonnegative weights of the row player's actions.
        j: length-n nonnegative weights of the column player's actions.
        r_ave: row player's cap on ``r @ x``.
        j_ave: column player's cap on ``j @ y``.
    """

    A: np.ndarray
    B: np.ndarray
    r: np.ndarray
    j: np.ndarray
    r_ave: float
    j_ave: float

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=np.float64))
        B = np.atleast_2d(np.asarray(self.B, dtype=np.float64))
        r = np.atleast_1d(np.asarray(self.r, dtype=np.float64))
        j = np.atleast_1d(np.asarray(self.j, dtype=np.float64))
        if A.ndim != 2 or B.ndim != 2 or A.size == 0:
            raise DimensionMismatchError("A and B must be nonempty matrices")
        if A.shape != B.shape:
            raise DimensionMismatchError(
                f"A is {A.shape} but B is {B.shape}")
        m, n = A.shape
        if r.shape != (m,):
            raise DimensionMismatchError(
                f"r has length {r.shape[0]}, expected {m} (rows of A)")
        if j.shape != (n,):
            raise DimensionMismatchError(
                f"j has length {j.shape[0]}, expected {n} (columns of A)")
        for name, arr in (("A", A), ("B", B), ("r", r), ("j", j)):
            _require_finite(name, arr)
        if not (np.isfinite(self.r_ave) and np.isfinite(self.j_ave)):
            raise NonFiniteEntryError("caps must be finite")
        if np.any(r < 0) or np.any(j < 0):
            raise NegativeWeightError("action weights must be nonnegative")
        if self.r_ave < 0 or self.j_ave < 0:
            raise NegativeWeightError("caps must be nonnegative")
        object.__setattr__(self, "A", _freeze(A))
        object.__setattr__(self, "B", _freeze(B))
        object.__setattr__(self, "r", _freeze(r))
        object.__setattr__(self, "j", _freeze(j))
        object.__setattr__(self, "r_ave", float(self.r_ave))
        object.__setattr__(self, "j_ave", float(self.j_ave))

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]


_GAME_FIELDS = ("A", "B", "r", "j", "r_ave", "j_ave")


def validate_game(spec: Mapping) -> ConstrainedGame:
    """Build a ConstrainedGame from a raw (e.g. JSON-parsed) description.

    The mapping must carry exactly the documented fields: matrices ``A`` and
    ``B`` as row-major lists of rows, weight vectors ``r`` and ``j``, and
    scalar caps ``r_ave`` and ``j_ave``.
    """
    for field in _GAME_FIELDS:
        if field not in spec:
            raise SchemaError(f"game description is missing field '{field}'")
    try:
        A = np.array(spec["A"], dtype=np.float64)
        B = np.array(spec["B"], dtype=np.float64)
        r = np.array(spec["r"], dtype=np.float64)
        j = np.array(spec["j"], dtype=np.float64)
        r_ave = float(spec["r_ave"])
        j_ave = float(spec["j_ave"])
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"malformed game field: {exc}") from exc
    if A.ndim != 2:
        raise DimensionMismatchError("A must be a matrix (list of equal-length rows)")
    if B.ndim != 2:
        raise DimensionMismatchError("B must be a matrix (list of equal-length rows)")
    return ConstrainedGame(A=A, B=B, r=r, j=j, r_ave=r_ave, j_ave=j_ave)


class MixedStrategy:
    """A probability vector over one player's actions.

    Entries must lie in [0, 1] and sum to 1, both within ``tol``. The vector
    is stored exactly as given; renormalizing would mask caller bugs, so
    out-of-tolerance input is rejected instead.
    """

    __slots__ = ("p",)

    def __init__(self, p, tol: float = DEFAULT_TOL):
        vec = np.atleast_1d(np.asarray(p, dtype=np.float64))
        if vec.ndim != 1 or vec.size == 0:
            raise InvalidStrategyError("a strategy must be a nonempty vector")
        if not np.all(np.isfinite(vec)):
            raise NonFiniteEntryError("strategy contains a non-finite entry")
        if np.any(vec < -tol) or np.any(vec > 1.0 + tol):
            raise InvalidStrategyError(
                f"strategy entries outside [0, 1] by more than {tol}: {vec}")
        total = float(np.sum(vec))
        if abs(total - 1.0) > tol:
            raise InvalidStrategyError(
                f"strategy sums to {total}, not 1 within {tol}")
        self.p = _freeze(vec)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.p, dtype=dtype)

    def __len__(self) -> int:
        return self.p.shape[0]

    def __iter__(self) -> Iterator[float]:
        return iter(self.p)

    def __getitem__(self, i):
        return self.p[i]

    def __repr__(self) -> str:
        return f"MixedStrategy({self.p.tolist()!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, MixedStrategy):
            return bool(np.array_equal(self.p, other.p))
        return NotImplemented


@dataclass(frozen=True)
class StrategyProfile:
    """A pair of mixed strategies, one per player."""

    x: MixedStrategy
    y: MixedStrategy

    def matches(self, game: ConstrainedGame) -> bool:
        return len(self.x) == game.m and len(self.y) == game.n


def _vec(p) -> np.ndarray:
    return np.atleast_1d(np.asarray(p, dtype=np.float64))


def is_probability_vector(p, tol: float = DEFAULT_TOL) -> bool:
    vec = _vec(p)
    if not np.all(np.isfinite(vec)):
        return False
    if np.any(vec < -tol) or np.any(vec > 1.0 + tol):
        return False
    return abs(float(np.sum(vec)) - 1.0) <= tol


def feasible_strategy(w, cap: float, p, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``p`` is a probability vector and ``w @ p <= cap + tol``."""
    weights = _vec(w)
    vec = _vec(p)
    if weights.shape != vec.shape:
        raise DimensionMismatchError(
            f"weights have length {weights.shape[0]} but strategy has "
            f"length {vec.shape[0]}")
    if not is_probability_vector(vec, tol):
        return False
    return float(weights @ vec) <= cap + tol


def feasible_profile(game: ConstrainedGame, x, y,
                     tol: float = DEFAULT_TOL) -> bool:
    """True iff x and y are feasible for their respective players."""
    return (feasible_strategy(game.r, game.r_ave, x, tol)
            and feasible_strategy(game.j, game.j_ave, y, tol))


def expected_payoffs(game: ConstrainedGame, x, y) -> tuple[float, float]:
    """Bilinear expected payoffs (x'Ay, x'By) of a strategy profile."""
    xv = _vec(x)
    yv = _vec(y)
    if xv.shape[0] != game.m or yv.shape[0] != game.n:
        raise DimensionMismatchError(
            f"profile ({xv.shape[0]}, {yv.shape[0]}) does not match game "
            f"shape {game.shape}")
    return float(xv @ game.A @ yv), float(xv @ game.B @ yv)


def is_properly_constrained(game: ConstrainedGame) -> bool:
    """True iff at least one cap actually restricts the strategy set.

    When false (both caps at or above the largest weight) every probability
    vector is feasible and the game reduces to a standard bimatrix game.
    """
    return game.r_ave < float(np.max(game.r)) or game.j_ave < float(np.max(game.j))


def existence_condition(game: ConstrainedGame) -> bool:
    """True iff both players can afford at least their cheapest action.

    Equivalent to both constrained strategy sets being nonempty, which
    guarantees the game has a Nash equilibrium. Solvers refuse to run when
    this is false.
    """
    return game.r_ave >= float(np.min(game.r)) and game.j_ave >= float(np.min(game.j))
