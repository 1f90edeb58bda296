"""Nash equilibrium computation through a zero-objective certificate.

Equilibria of a constrained bimatrix game are exactly the global maximizers
of the quadratic program

    maximize  x'(A+B)y - u*r_ave - v*j_ave - alpha - beta

over points (x, y, u, v, alpha, beta) satisfying both players' primal
feasibility and dual-side inequalities (``qp_feasible``). The objective is
nonpositive on the whole feasible set and reaches zero exactly at equilibria,
so any candidate can be certified in closed form: feasible and objective
zero means globally optimal means equilibrium. The solvers below exploit
that one-sided check rather than attacking the indefinite QP directly.

Two search strategies are provided. ``solve_support_enumeration`` is exact
and complete for nondegenerate small games: it walks every support pair and
every complementarity binding pattern, solves the resulting square linear
system, and keeps candidates that certify. ``solve_iterative`` is a
certified heuristic for larger games: seeded multi-start best-response
dynamics, with multiplier recovery and support refinement applied to the
points the dynamics visit. It can fail to find anything (reported as an
empty result, never a guess); whatever it returns is certified.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import EmptyFeasibleSetError
from .game import ConstrainedGame, _vec, existence_condition
from .kkt import (
    DEFAULT_KKT_TOL,
    EquilibriumCertificate,
    KktReport,
    QpPoint,
    kkt_check,
    recover_multipliers,
)
from .lp import LpProblem, LpStatus, best_response_col, best_response_row, lp_solve

DEDUP_TOL = 1e-7
LSTSQ_RESIDUAL_TOL = 1e-10
BR_MAX_ITERATIONS = 200
FP_ITERATIONS = 160
REFINE_MAX_ROUNDS = 40


def qp_objective(game: ConstrainedGame, point: QpPoint) -> float:
    """Certificate objective x'(A+B)y - u*r_ave - v*j_ave - alpha - beta."""
    point.check_shape(game)
    bilinear = float(point.x @ (game.A + game.B) @ point.y)
    return (bilinear - point.u * game.r_ave - point.v * game.j_ave
            - point.alpha - point.beta)


@dataclass(frozen=True)
class Violation:
    """One violated constraint group of the certificate program."""

    group: int            # 1..7, in the order documented on qp_feasible
    constraint: str       # human-readable form, e.g. "u >= 0"
    residual: float       # positive amount by which it fails

    def __str__(self) -> str:
        return f"group {self.group}: {self.constraint} violated by {self.residual:.3e}"


def qp_feasible(game: ConstrainedGame, point: QpPoint,
                tol: float = 1e-9) -> list[Violation]:
    """Check the seven constraint groups of the certificate program.

    Groups: (1) Ay - ur - alpha <= 0, (2) x'B - vj - beta <= 0,
    (3) r@x <= r_ave, (4) j@y <= j_ave, (5) sum(x) == 1, (6) sum(y) == 1,
    (7) x, y, u, v >= 0. Returns the empty list iff all hold within tol,
    otherwise one named Violation per failing group.
    """
    point.check_shape(game)
    x, y = point.x, point.y
    out = []

    def le(group, constraint, residual):
        if residual > tol:
            out.append(Violation(group, constraint, float(residual)))

    le(1, "A y - u r - alpha <= 0",
       np.max(game.A @ y - point.u * game.r - point.alpha))
    le(2, "x'B - v j - beta <= 0",
       np.max(x @ game.B - point.v * game.j - point.beta))
    le(3, "r@x <= r_ave", float(game.r @ x) - game.r_ave)
    le(4, "j@y <= j_ave", float(game.j @ y) - game.j_ave)
    sum_x = abs(float(np.sum(x)) - 1.0)
    if sum_x > tol:
        out.append(Violation(5, "sum(x) == 1", sum_x))
    sum_y = abs(float(np.sum(y)) - 1.0)
    if sum_y > tol:
        out.append(Violation(6, "sum(y) == 1", sum_y))
    sign = max(float(np.max(-x)), float(np.max(-y)), -point.u, -point.v)
    if sign > tol:
        parts = []
        if np.max(-x) > tol:
            parts.append("x >= 0")
        if np.max(-y) > tol:
            parts.append("y >= 0")
        if -point.u > tol:
            parts.append("u >= 0")
        if -point.v > tol:
            parts.append("v >= 0")
        out.append(Violation(7, ", ".join(parts), sign))
    return out


def certify_global(game: ConstrainedGame, point: QpPoint,
                   tol: float = 1e-7) -> bool:
    """True iff the point is feasible with |objective| <= tol.

    Since the objective is bounded above by zero on the feasible set, this
    certifies global optimality, and therefore that (x, y) is a Nash
    equilibrium with multipliers (u, v, alpha, beta).
    """
    if qp_feasible(game, point, tol):
        return False
    return abs(qp_objective(game, point)) <= tol


class SolveMode(Enum):
    AUTO = "auto"
    ENUMERATE = "enumerate"
    ITERATIVE = "iterative"


@dataclass(frozen=True)
class SolveOptions:
    mode: SolveMode = SolveMode.AUTO
    tol_feas: float = 1e-9
    tol_cert: float = 1e-7
    max_support: int = 6
    restarts: int = 64
    seed: int = 0
    # force u = 0 when the row cap can never bind (r_ave > max r); always
    # sound in that regime and halves the binding patterns
    reduced_row_unconstrained: bool = True

    def __post_init__(self):
        if self.tol_feas <= 0 or self.tol_cert <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_support < 1:
            raise ValueError("max_support must be at least 1")


@dataclass(frozen=True)
class CertifiedEquilibrium:
    """One equilibrium together with its proof artifacts."""

    certificate: EquilibriumCertificate
    report: KktReport
    qp_objective: float


@dataclass(frozen=True)
class SolveDiagnostics:
    supports_tried: int = 0
    restarts_used: int = 0


@dataclass(frozen=True)
class SolveResult:
    equilibria: tuple[CertifiedEquilibrium, ...]
    method: str
    diagnostics: SolveDiagnostics = field(default_factory=SolveDiagnostics)

    @property
    def found(self) -> bool:
        return bool(self.equilibria)


def random_feasible_strategy(n_actions: int, weights, cap: float,
                             rng: np.random.Generator) -> np.ndarray:
    """Sample a cap-feasible point of the simplex, deterministic per seed.

    Draws uniformly on the simplex; if the cap is violated, mixes toward the
    cheapest action with the smallest coefficient restoring feasibility.
    """
    w = _vec(weights)
    p = rng.dirichlet(np.ones(n_actions))
    cost = float(w @ p)
    if cost <= cap:
        return p
    cheapest = int(np.argmin(w))
    if w[cheapest] > cap:
        raise EmptyFeasibleSetError("no action is affordable under the cap")
    t = (cost - cap) / (cost - w[cheapest])
    mixed = (1.0 - t) * p
    mixed[cheapest] += t
    return mixed


def _binding_patterns(game: ConstrainedGame, opts: SolveOptions):
    """Complementarity cases to try: multiplier zero vs. cap tight."""
    u_patterns = [True, False]
    if opts.reduced_row_unconstrained and game.r_ave > float(np.max(game.r)):
        u_patterns = [True]  # cap can never bind, so u = 0 at any equilibrium
    v_patterns = [True, False]
    if opts.reduced_row_unconstrained and game.j_ave > float(np.max(game.j)):
        v_patterns = [True]
    return [(uz, vz) for uz in u_patterns for vz in v_patterns]


def _solve_support_system(game: ConstrainedGame, sx, sy, u_zero: bool,
                          v_zero: bool) -> tuple[QpPoint | None, float]:
    """Solve the square linear system of one support pair and binding pattern.

    Equations: dual-side tightness on both supports, both probability sums,
    plus one equation per complementarity branch (u = 0 or r@x = r_ave, and
    the column mirror). Rank-deficient systems fall back to least squares.
    Returns the assembled point together with the max-norm residual of the
    linear system; callers decide how much residual to accept.
    """
    p, q = len(sx), len(sy)
    size = p + q + 4
    M = np.zeros((size, size))
    rhs = np.zeros(size)
    ix = slice(0, p)
    iy = slice(p, p + q)
    iu, iv, ia, ib = p + q, p + q + 1, p + q + 2, p + q + 3

    r_s = game.r[list(sx)]
    j_s = game.j[list(sy)]
    # row-player tightness on sx: A[i, sy] y - u r_i - alpha = 0
    M[0:p, iy] = game.A[np.ix_(sx, sy)]
    M[0:p, iu] = -r_s
    M[0:p, ia] = -1.0
    # column-player tightness on sy: B[sx, k] x - v j_k - beta = 0
    M[p:p + q, ix] = game.B[np.ix_(sx, sy)].T
    M[p:p + q, iv] = -j_s
    M[p:p + q, ib] = -1.0
    M[p + q, ix] = 1.0
    rhs[p + q] = 1.0
    M[p + q + 1, iy] = 1.0
    rhs[p + q + 1] = 1.0
    if u_zero:
        M[p + q + 2, iu] = 1.0
    else:
        M[p + q + 2, ix] = r_s
        rhs[p + q + 2] = game.r_ave
    if v_zero:
        M[p + q + 3, iv] = 1.0
    else:
        M[p + q + 3, iy] = j_s
        rhs[p + q + 3] = game.j_ave

    try:
        w = np.linalg.solve(M, rhs)
        if not np.all(np.isfinite(w)) or \
                float(np.max(np.abs(M @ w - rhs))) > LSTSQ_RESIDUAL_TOL:
            w = np.linalg.lstsq(M, rhs, rcond=None)[0]
    except np.linalg.LinAlgError:
        w = np.linalg.lstsq(M, rhs, rcond=None)[0]
    if not np.all(np.isfinite(w)):
        return None, float("inf")
    residual = float(np.max(np.abs(M @ w - rhs)))

    x = np.zeros(game.m)
    x[list(sx)] = w[ix]
    y = np.zeros(game.n)
    y[list(sy)] = w[iy]
    u = 0.0 if u_zero else float(w[iu])
    v = 0.0 if v_zero else float(w[iv])
    point = QpPoint(x=x, y=y, u=u, v=v, alpha=float(w[ia]), beta=float(w[ib]))
    return point, residual


def _certify_candidate(game: ConstrainedGame, point: QpPoint,
                       opts: SolveOptions) -> EquilibriumCertificate | None:
    """Promote a raw candidate to a certificate, or drop it.

    A candidate whose (x, y) is right but whose multipliers came out of a
    degenerate (rank-deficient) system may still fail the direct check; the
    multiplier-recovery LP then re-derives them from scratch, which rescues
    representative equilibria of degenerate games.
    """
    report = kkt_check(game, point, opts.tol_cert)
    if report.passed and abs(qp_objective(game, point)) <= opts.tol_cert:
        try:
            return EquilibriumCertificate(x=point.x, y=point.y, u=point.u,
                                          v=point.v, alpha=point.alpha,
                                          beta=point.beta)
        except Exception:
            return None
    primal = ("I.1", "I.2", "I.3", "II.1", "II.2", "II.3")
    if all(report[name].passed for name in primal):
        return recover_multipliers(game, point.x, point.y, tol=opts.tol_cert)
    return None


def _dedup_key(cert: EquilibriumCertificate) -> np.ndarray:
    return np.concatenate([cert.x, cert.y])


def _merge(found: list[EquilibriumCertificate],
           cert: EquilibriumCertificate) -> bool:
    key = _dedup_key(cert)
    for existing in found:
        if float(np.max(np.abs(_dedup_key(existing) - key))) < DEDUP_TOL:
            return False
    found.append(cert)
    return True


def _finalize(game: ConstrainedGame, certs: list[EquilibriumCertificate],
              method: str, opts: SolveOptions,
              diagnostics: SolveDiagnostics) -> SolveResult:
    ordered = sorted(certs, key=lambda c: tuple(np.concatenate([c.x, c.y])))
    entries = tuple(
        CertifiedEquilibrium(certificate=c,
                             report=kkt_check(game, c, opts.tol_cert),
                             qp_objective=qp_objective(game, c))
        for c in ordered)
    return SolveResult(equilibria=entries, method=method,
                       diagnostics=diagnostics)


def solve_support_enumeration(game: ConstrainedGame,
                              opts: SolveOptions | None = None) -> SolveResult:
    """Enumerate all support pairs and binding patterns; certify survivors.

    Complete for nondegenerate games (every equilibrium has some support
    pair and binding pattern, and its square system is then uniquely
    solvable). Supports are visited by increasing total size then
    lexicographically, and results are returned sorted by (x, y), so output
    order is reproducible. Cost grows as 2^(m+n); intended for games that
    fit within ``opts.max_support``.
    """
    opts = opts or SolveOptions()
    if not existence_condition(game):
        raise EmptyFeasibleSetError(
            "a cap is below the cheapest action; no feasible strategies")
    m, n = game.shape
    patterns = _binding_patterns(game, opts)
    found: list[EquilibriumCertificate] = []
    supports_tried = 0

    row_supports = [list(itertools.combinations(range(m), size))
                    for size in range(1, m + 1)]
    col_supports = [list(itertools.combinations(range(n), size))
                    for size in range(1, n + 1)]
    for total in range(2, m + n + 1):
        for p in range(max(1, total - n), min(m, total - 1) + 1):
            q = total - p
            for sx in row_supports[p - 1]:
                for sy in col_supports[q - 1]:
                    for u_zero, v_zero in patterns:
                        supports_tried += 1
                        point, residual = _solve_support_system(
                            game, sx, sy, u_zero, v_zero)
                        if point is None or residual > LSTSQ_RESIDUAL_TOL:
                            continue
                        cert = _certify_candidate(game, point, opts)
                        if cert is not None:
                            _merge(found, cert)
    return _finalize(game, found, "enumeration", opts,
                     SolveDiagnostics(supports_tried=supports_tried))


def _support_of(p: np.ndarray, tol: float = 1e-9) -> tuple[int, ...]:
    return tuple(int(i) for i in np.flatnonzero(p > tol))


def _tight_set_supports(game: ConstrainedGame, x: np.ndarray, y: np.ndarray,
                        feas_tol: float) -> list[tuple[tuple, tuple]]:
    """Support guesses from the near-tight dual conditions of a profile.

    Fits approximate multipliers to (x, y) by minimizing the worst violation
    s of both dominance conditions (an LP), then reads off the actions whose
    condition is tight within s plus a margin. Near an equilibrium s is tiny
    and the tight sets are exactly the candidate supports.
    """
    m, n = game.shape
    Ay = game.A @ y
    xB = x @ game.B
    # variables [u, v, alpha, beta, s]; tiny multiplier penalty keeps the
    # optimum unique without disturbing s
    A_le = np.zeros((m + n, 5))
    b_le = np.zeros(m + n)
    A_le[:m, 0] = -game.r
    A_le[:m, 2] = -1.0
    A_le[:m, 4] = -1.0
    b_le[:m] = -Ay
    A_le[m:, 1] = -game.j
    A_le[m:, 3] = -1.0
    A_le[m:, 4] = -1.0
    b_le[m:] = -xB
    eq_rows, eq_rhs = [], []
    if game.r_ave - float(game.r @ x) > feas_tol:
        eq_rows.append([1.0, 0.0, 0.0, 0.0, 0.0])
        eq_rhs.append(0.0)
    if game.j_ave - float(game.j @ y) > feas_tol:
        eq_rows.append([0.0, 1.0, 0.0, 0.0, 0.0])
        eq_rhs.append(0.0)
    problem = LpProblem(
        c=np.array([-1e-6, -1e-6, 0.0, 0.0, -1.0]),
        A_eq=np.array(eq_rows) if eq_rows else None,
        b_eq=np.array(eq_rhs) if eq_rhs else None,
        A_le=A_le, b_le=b_le,
        lower=np.array([0.0, 0.0, -np.inf, -np.inf, 0.0]))
    sol = lp_solve(problem)
    if sol.status != LpStatus.OPTIMAL:
        return []
    u, v, alpha, beta, s = sol.z
    out = []
    for eps in (1e-9, 1e-6):
        margin = s + eps
        sx = tuple(int(i) for i in
                   np.flatnonzero(u * game.r + alpha - Ay <= margin))
        sy = tuple(int(k) for k in
                   np.flatnonzero(v * game.j + beta - xB <= margin))
        if sx and sy and (sx, sy) not in out:
            out.append((sx, sy))
    return out


def _pattern_balance(u_zero: bool, v_zero: bool) -> int:
    """Generic support-size balance |sy| - |sx| required by a pattern.

    Each tight cap contributes one extra equation on its own player's side,
    so solvable support pairs satisfy |sy| = |sx| + 1 when only the column
    budget binds, |sx| = |sy| + 1 when only the row cap binds, and equal
    sizes otherwise (the unconstrained support-enumeration balance).
    """
    return (0 if u_zero else -1) + (0 if v_zero else 1)


class _RefineState:
    """Bookkeeping shared by refinement chains within one restart."""

    def __init__(self):
        self.visited: set = set()
        self.systems_solved = 0


def _apply_move(sx, sy, action, idx):
    if action == 0:
        return tuple(sorted(set(sx) | {idx})), sy
    if action == 1:
        return tuple(i for i in sx if i != idx), sy
    if action == 2:
        return sx, tuple(sorted(set(sy) | {idx}))
    return sx, tuple(k for k in sy if k != idx)


def _refine_support(game: ConstrainedGame, sx, sy, u_zero: bool, v_zero: bool,
                    opts: SolveOptions, state: _RefineState) -> QpPoint | None:
    """Search support space for a certified point, flipping one index a step.

    Depth-first walk from a seed support pair. At each pair the square
    system is solved; a passing point ends the search. Otherwise children
    are generated: add the most violated dominated action or drop the most
    negative probability when the system is consistent, and when it is
    inconsistent (support sizes unbalanced for this binding pattern, or the
    seed is simply wrong) both rebalancing directions are branched: add the
    nearest-to-tight missing index, or drop the smallest-mass entries. A
    shared visited set keeps chains from re-solving pairs explored by
    earlier seeds, and a node budget bounds the walk.
    """
    tol = opts.tol_cert
    budget = REFINE_MAX_ROUNDS * 5
    stack = [(sx, sy)]
    while stack and state.systems_solved < 100_000:
        sx, sy = stack.pop()
        if not sx or not sy:
            continue
        key = (sx, sy, u_zero, v_zero)
        if key in state.visited:
            continue
        budget -= 1
        if budget < 0:
            break
        state.visited.add(key)
        state.systems_solved += 1
        point, residual = _solve_support_system(game, sx, sy, u_zero, v_zero)
        if point is None:
            continue
        x, y = point.x, point.y
        children = []

        if residual > LSTSQ_RESIDUAL_TOL:
            row_viol = game.A @ y - point.u * game.r - point.alpha
            col_viol = x @ game.B - point.v * game.j - point.beta
            diff = (len(sy) - len(sx)) - _pattern_balance(u_zero, v_zero)
            if diff < 0:
                # too many rows: drop the two least-supported, or grow sy
                drops = sorted(sx, key=lambda i: (abs(x[i]), i))[:2]
                children += [(1, i) for i in drops]
                missing = [k for k in range(game.n) if k not in set(sy)]
                if missing:
                    children.append((2, max(missing, key=lambda k: (col_viol[k], -k))))
            elif diff > 0:
                drops = sorted(sy, key=lambda k: (abs(y[k]), k))[:2]
                children += [(3, k) for k in drops]
                missing = [i for i in range(game.m) if i not in set(sx)]
                if missing:
                    children.append((0, max(missing, key=lambda i: (row_viol[i], -i))))
            # balanced but inconsistent: no informative move
        else:
            report = kkt_check(game, point, tol)
            if report.passed and abs(qp_objective(game, point)) <= tol:
                return point
            moves = []
            row_viol = game.A @ y - point.u * game.r - point.alpha
            col_viol = x @ game.B - point.v * game.j - point.beta
            sx_set, sy_set = set(sx), set(sy)
            for i in range(game.m):
                if i not in sx_set and row_viol[i] > tol:
                    moves.append((-row_viol[i], 0, i))
                elif i in sx_set and x[i] < -tol:
                    moves.append((x[i], 1, i))
            for k in range(game.n):
                if k not in sy_set and col_viol[k] > tol:
                    moves.append((-col_viol[k], 2, k))
                elif k in sy_set and y[k] < -tol:
                    moves.append((y[k], 3, k))
            children = [(a, i) for _, a, i in sorted(moves)[:2]]

        # depth-first: push in reverse so the best-ranked child pops first
        for action, idx in reversed(children):
            stack.append(_apply_move(sx, sy, action, idx))
    return None


def solve_iterative(game: ConstrainedGame,
                    opts: SolveOptions | None = None) -> SolveResult:
    """Certified multi-start heuristic for games beyond enumeration size.

    Each restart samples a feasible profile and alternates best responses to
    a fixed point or cycle (capped at 200 iterations); the final profile and
    the tail average go through multiplier recovery. If that certifies
    nothing, a fictitious-play pass (best responses against running
    averages) produces a smoothed profile, and support seeds taken from the
    profiles, their dual tight sets, and the trajectory are refined through
    the support-system walk. Only candidates passing the global certificate
    are returned; an empty result means the heuristic found nothing, not
    that no equilibrium exists.
    """
    opts = opts or SolveOptions()
    if not existence_condition(game):
        raise EmptyFeasibleSetError(
            "a cap is below the cheapest action; no feasible strategies")
    m, n = game.shape
    rng = np.random.default_rng(opts.seed)
    patterns = _binding_patterns(game, opts)
    found: list[EquilibriumCertificate] = []
    supports_tried = 0
    restarts_used = 0

    def try_profile(cx, cy):
        cert = recover_multipliers(game, cx, cy, tol=opts.tol_cert)
        if cert is not None and abs(qp_objective(game, cert)) <= opts.tol_cert:
            _merge(found, cert)

    for _ in range(max(1, opts.restarts)):
        restarts_used += 1
        x0 = random_feasible_strategy(m, game.r, game.r_ave, rng)
        y0 = random_feasible_strategy(n, game.j, game.j_ave, rng)

        # plain best-response dynamics until a profile repeats
        x, y = x0, y0
        xs, ys = [x], [y]
        seen: dict[tuple, int] = {}
        cycle_start = None
        for _ in range(BR_MAX_ITERATIONS):
            x = np.asarray(best_response_row(game, y)[0])
            y = np.asarray(best_response_col(game, x)[0])
            xs.append(x)
            ys.append(y)
            key = (tuple(np.round(x, 10)), tuple(np.round(y, 10)))
            if key in seen:
                cycle_start = seen[key]
                break
            seen[key] = len(xs) - 1
        if cycle_start is None:
            cycle_start = max(0, len(xs) - 50)
        tail_x = np.mean(xs[cycle_start:], axis=0)
        tail_y = np.mean(ys[cycle_start:], axis=0)

        profiles = [(xs[-1], ys[-1]), (tail_x, tail_y)]
        for cx, cy in profiles:
            try_profile(cx, cy)
        if found:
            break

        # fictitious play from the same start: responses to running averages
        # explore far more supports than the raw dynamics
        xbar, ybar = x0, y0
        for t in range(1, FP_ITERATIONS + 1):
            bx = np.asarray(best_response_row(game, ybar)[0])
            by = np.asarray(best_response_col(game, xbar)[0])
            xbar = xbar + (bx - xbar) / (t + 1)
            ybar = ybar + (by - ybar) / (t + 1)
        profiles.append((xbar, ybar))
        try_profile(xbar, ybar)
        if found:
            break

        seeds: list[tuple[tuple, tuple]] = []
        for cx, cy in ((xbar, ybar), (tail_x, tail_y)):
            seeds.append((_support_of(cx), _support_of(cy)))
            seeds.append((_support_of(cx, 1e-2 * float(np.max(cx))),
                          _support_of(cy, 1e-2 * float(np.max(cy)))))
        for cx, cy in profiles:
            seeds.extend(_tight_set_supports(game, cx, cy, opts.tol_feas))
        seeds.append((_support_of(xs[-1]), _support_of(ys[-1])))
        seeds.append((_support_of(np.max(xs[cycle_start:], axis=0)),
                      _support_of(np.max(ys[cycle_start:], axis=0))))

        state = _RefineState()
        for sx, sy in seeds:
            if not sx or not sy:
                continue
            for u_zero, v_zero in patterns:
                point = _refine_support(game, sx, sy, u_zero, v_zero,
                                        opts, state)
                if point is not None:
                    cert = _certify_candidate(game, point, opts)
                    if cert is not None:
                        _merge(found, cert)
            if found:
                break
        supports_tried += state.systems_solved
        if found:
            break

    return _finalize(game, found, "iterative", opts,
                     SolveDiagnostics(supports_tried=supports_tried,
                                      restarts_used=restarts_used))


def solve(game: ConstrainedGame,
          opts: SolveOptions | None = None) -> SolveResult:
    """Dispatch to enumeration for small games, iterative search otherwise.

    Every certificate in the result has been re-verified: it passes the
    fourteen-condition check at ``opts.tol_cert`` and its certificate
    objective is zero within the same tolerance.
    """
    opts = opts or SolveOptions()
    if opts.mode is SolveMode.ENUMERATE:
        result = solve_support_enumeration(game, opts)
    elif opts.mode is SolveMode.ITERATIVE:
        result = solve_iterative(game, opts)
    else:
        m, n = game.shape
        if m <= opts.max_support and n <= opts.max_support + 1:
            result = solve_support_enumeration(game, opts)
        else:
            result = solve_iterative(game, opts)
    verified = tuple(
        e for e in result.equilibria
        if e.report.passed and abs(e.qp_objective) <= opts.tol_cert
        and certify_global(game, e.certificate, opts.tol_cert))
    return SolveResult(equilibria=verified, method=result.method,
                       diagnostics=result.diagnostics)
