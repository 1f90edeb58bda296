"""Packetized AWGN link under power-limited jamming.

A transmitter picks among n fixed rates R_0 > ... > R_{n-1} (nats per
transmission) at constant power P_T over an AWGN channel with noise variance
N. A jammer with average-power budget j_ave picks among n+1 power levels
J_0 = 0 < J_1 < ... < J_n, built so that level J_k is just enough (a pad of
delta*N above the capacity threshold) to make rates R_0..R_{k-1} undecodable
while leaving R_k..R_{n-1} intact. A packet sent at rate R_i therefore
survives jam level J_k exactly when k <= i.

This yields a constrained bimatrix game: the transmitter's payoff per packet
is the rate if it survives (matrix C, lower-triangular pattern), the
jammer's payoff is one per destroyed packet (matrix D, the complementary
strictly-upper pattern), and only the jammer's average-power cap binds.
The module evaluates every closed form of this model (critical budgets,
piecewise-linear zero-sum throughput, threshold, breakpoint equilibria with
their multipliers) and cross-checks them against LP and certificate oracles,
producing sweep tables of throughput and destroyed packets versus budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BudgetOutOfRangeError,
    CertificateVerificationError,
    GameValidationError,
    NegativeThresholdError,
)
from .game import ConstrainedGame, expected_payoffs
from .kkt import EquilibriumCertificate, kkt_check
from .lp import LpProblem, LpStatus, lp_solve
from .solver import SolveOptions, SolveResult, qp_objective, solve


def _rates_vector(R) -> np.ndarray:
    rates = np.atleast_1d(np.asarray(R, dtype=np.float64))
    if rates.size == 0 or np.any(rates <= 0):
        raise GameValidationError("rates must be positive")
    if rates.size > 1 and not np.all(np.diff(rates) < 0):
        raise GameValidationError("rates must be strictly decreasing")
    return rates


@dataclass(frozen=True)
class JammingLink:
    """Rates, derived jamming powers, and the physical parameters behind them.

    ``R`` has length n (strictly decreasing, positive); ``J`` has length n+1
    (strictly increasing from J_0 = 0). ``P_T``, ``N``, ``delta`` are None
    for abstract links whose powers were given directly rather than derived.
    """

    R: np.ndarray
    J: np.ndarray
    P_T: float | None = None
    N: float | None = None
    delta: float | None = None

    def __post_init__(self):
        rates = _rates_vector(self.R)
        powers = np.atleast_1d(np.asarray(self.J, dtype=np.float64))
        if powers.shape[0] != rates.shape[0] + 1:
            raise GameValidationError(
                f"need {rates.shape[0] + 1} jamming powers for "
                f"{rates.shape[0]} rates, got {powers.shape[0]}")
        if powers[0] != 0.0:
            raise GameValidationError("the first jamming power must be 0")
        if not np.all(np.diff(powers) > 0):
            raise GameValidationError("jamming powers must be strictly increasing")
        if self.P_T is not None:
            if self.N is None or self.delta is None:
                raise GameValidationError("P_T, N and delta go together")
            if self.P_T < min_transmit_power(self.N, float(rates[0])):
                raise NegativeThresholdError(
                    "P_T is below the minimum power for the highest rate")
        rates.setflags(write=False)
        powers.setflags(write=False)
        object.__setattr__(self, "R", rates)
        object.__setattr__(self, "J", powers)

    @classmethod
    def from_powers(cls, R, J) -> "JammingLink":
        """Abstract link with jamming powers given directly."""
        return cls(R=np.asarray(R, dtype=np.float64),
                   J=np.asarray(J, dtype=np.float64))

    @property
    def n(self) -> int:
        return self.R.shape[0]

    @property
    def max_power(self) -> float:
        return float(self.J[-1])


def min_transmit_power(N: float, R_max: float) -> float:
    """Smallest power making rate R_max decodable on a noise-N channel.

    From the AWGN capacity R = log(1 + P/N)/2: P_min = N (e^{2 R_max} - 1).
    """
    if N < 0 or R_max < 0:
        raise GameValidationError("noise and rate must be nonnegative")
    return N * math.expm1(2.0 * R_max)


def threshold_powers(R, P_T: float, N: float) -> np.ndarray:
    """Per-rate jamming thresholds: the largest jam power each rate survives.

    Rate R_j stays decodable while the jam power is at most
    P_T / (e^{2 R_j} - 1) - N. Thresholds increase as rates decrease.
    """
    rates = _rates_vector(R)
    thresholds = P_T / np.expm1(2.0 * rates) - N
    if np.any(thresholds < 0):
        raise NegativeThresholdError(
            f"P_T={P_T} cannot support the highest rate "
            f"(needs at least {min_transmit_power(N, float(rates[0]))})")
    return thresholds


def jammer_action_set(R, P_T: float, N: float, delta: float) -> JammingLink:
    """Build the jammer's n+1 power levels from the public rate set.

    Level 0 is no jamming. Level k (k >= 1) sits delta*N above the threshold
    of rate R_{k-1}, so it defeats rates R_0..R_{k-1} and nothing else; the
    strictly positive pad keeps it above the decodability boundary.
    """
    if delta <= 0:
        raise GameValidationError("delta must be strictly positive")
    thresholds = threshold_powers(R, P_T, N)
    powers = np.concatenate([[0.0], thresholds + delta * N])
    return JammingLink(R=np.asarray(R, dtype=np.float64), J=powers,
                       P_T=float(P_T), N=float(N), delta=float(delta))


def transmitter_matrix(R) -> np.ndarray:
    """n-by-(n+1) payoff matrix C: C[i, k] = R_i if k <= i else 0.

    Row i carries rate R_i in columns 0..i (jam levels the rate survives)
    and zeros above, since destroyed packets contribute no throughput.
    """
    rates = _rates_vector(R)
    n = rates.shape[0]
    cols = np.arange(n + 1)
    return np.where(cols[None, :] <= np.arange(n)[:, None],
                    rates[:, None], 0.0)


def jammer_matrix(n: int) -> np.ndarray:
    """n-by-(n+1) destroyed-packet indicator D: D[i, k] = 1 iff k >= i + 1."""
    if n < 1:
        raise GameValidationError("need at least one rate")
    cols = np.arange(n + 1)
    return np.where(cols[None, :] >= np.arange(n)[:, None] + 1, 1.0, 0.0)


def critical_budgets(link: JammingLink) -> np.ndarray:
    """Budgets at which the zero-sum throughput hits each rate exactly.

    Entry m-1 (for m = 1..n-1) is R_m * sum_{i=1..m} (1/R_i - 1/R_{i-1}) J_i,
    the budget where the equilibrium throughput equals R_m. Strictly
    increasing in m.
    """
    R, J = link.R, link.J
    if link.n < 2:
        return np.zeros(0)
    increments = (1.0 / R[1:] - 1.0 / R[:-1]) * J[1:link.n]
    return R[1:] * np.cumsum(increments)


def jamming_threshold(link: JammingLink) -> float:
    """Minimum average power forcing the transmitter to its lowest rate.

    Equals the last critical budget; the top power level J_n does not enter.
    """
    if link.n < 2:
        raise GameValidationError("threshold needs at least two rates")
    return float(critical_budgets(link)[-1])


def _segments(link: JammingLink) -> np.ndarray:
    # budget breakpoints [0, crit_1, ..., crit_{n-1}, J_n]
    return np.concatenate([[0.0], critical_budgets(link), [link.max_power]])


def zero_sum_throughput(link: JammingLink, j_ave: float) -> float:
    """Equilibrium throughput of the zero-sum game, in closed form.

    Piecewise linear and decreasing in the budget: on the segment between
    critical budgets m and m+1 it interpolates
    (J_{m+1} - j_ave) / (J_{m+1} - crit_m) * R_m, hitting R_m exactly at
    crit_m and reaching 0 at the full budget J_n. The first and last
    segments extend the same formula with crit_0 = 0 and crit_n = J_n.
    """
    if j_ave < 0 or j_ave > link.max_power:
        raise BudgetOutOfRangeError(
            f"budget {j_ave} outside [0, {link.max_power}]")
    edges = _segments(link)
    m = int(np.searchsorted(edges, j_ave, side="right")) - 1
    m = min(m, link.n - 1)
    hi = float(link.J[m + 1])
    lo = float(edges[m])
    return float(link.R[m]) * (hi - j_ave) / (hi - lo)


def zero_sum_throughput_lp(link: JammingLink, j_ave: float,
                           r_cap: float | None = None) -> float:
    """Zero-sum throughput by LP, the independent oracle for the closed form.

    Maximizes the guaranteed throughput t = beta - v*j_ave over transmitter
    mixtures x, using the dual of the jammer's inner budget-constrained
    minimization: beta - v J_k <= (C'x)_k for every jam level k.
    """
    if j_ave < 0 or j_ave > link.max_power:
        raise BudgetOutOfRangeError(
            f"budget {j_ave} outside [0, {link.max_power}]")
    C = transmitter_matrix(link.R)
    n = link.n
    # variables: [x_0..x_{n-1}, v, beta]
    A_le = np.zeros((n + 1, n + 2))
    A_le[:, :n] = -C.T
    A_le[:, n] = -link.J
    A_le[:, n + 1] = 1.0
    b_le = np.zeros(n + 1)
    rows_eq = [np.concatenate([np.ones(n), [0.0, 0.0]])]
    rhs_eq = [1.0]
    if r_cap is not None:
        A_le = np.vstack([A_le, np.concatenate([link.R, [0.0, 0.0]])])
        b_le = np.concatenate([b_le, [r_cap]])
    c = np.zeros(n + 2)
    c[n] = -j_ave
    c[n + 1] = 1.0
    lower = np.concatenate([np.zeros(n + 1), [-np.inf]])
    sol = lp_solve(LpProblem(c=c, A_eq=np.array(rows_eq), b_eq=np.array(rhs_eq),
                             A_le=A_le, b_le=b_le, lower=lower))
    if sol.status != LpStatus.OPTIMAL:
        raise CertificateVerificationError(
            f"zero-sum oracle LP ended {sol.status.value}")
    return float(sol.value)


def zero_sum_jammer_payoff(j_ave: float, J_n: float) -> float:
    """Average destroyed packets in the zero-sum game: j_ave / J_n.

    The jammer's maxmin strategy uses the top power with probability
    j_ave / J_n and stays silent otherwise, guaranteeing that fraction of
    destroyed packets regardless of the transmitter.
    """
    if J_n <= 0:
        raise BudgetOutOfRangeError("maximum jamming power must be positive")
    if j_ave < 0 or j_ave > J_n:
        raise BudgetOutOfRangeError(f"budget {j_ave} outside [0, {J_n}]")
    return j_ave / J_n


def build_bimatrix_jamming_game(link: JammingLink, j_ave: float) -> ConstrainedGame:
    """Assemble the constrained bimatrix game at a given jammer budget.

    The transmitter's cap is set above the largest rate so it never binds
    (its multiplier is forced to zero); only the jammer's budget constrains.
    """
    if j_ave < 0 or j_ave > link.max_power:
        raise BudgetOutOfRangeError(
            f"budget {j_ave} outside [0, {link.max_power}]")
    return ConstrainedGame(
        A=transmitter_matrix(link.R),
        B=jammer_matrix(link.n),
        r=link.R,
        j=link.J,
        r_ave=float(np.max(link.R)) + 1.0,
        j_ave=float(j_ave),
    )


@dataclass(frozen=True)
class BreakpointEquilibrium:
    """Closed-form equilibrium at the m-th critical budget."""

    m: int
    j_ave: float
    certificate: EquilibriumCertificate
    transmitter_payoff: float
    jammer_payoff: float


def closed_form_equilibrium(link: JammingLink, m: int) -> BreakpointEquilibrium:
    """Construct and verify the breakpoint equilibrium for 1 <= m <= n-1.

    At budget crit_m the transmitter mixes the top m rates with weights
    proportional to consecutive power gaps, x_i = (J_{i+1} - J_i) / J_m for
    i = 0..m-1, and the jammer mixes levels 0..m with
    y_i = R_m (1/R_i - 1/R_{i-1}); both telescope to probability one. With
    multipliers u = 0, alpha = R_m, v = 1/J_m, beta = 0 the certificate
    objective is exactly zero, giving payoffs (R_m, crit_m / J_m). The
    construction is re-verified through the fourteen-condition check before
    being returned, so a convention error cannot escape silently.
    """
    if m < 1 or m > link.n - 1:
        raise GameValidationError(f"m must be in 1..{link.n - 1}, got {m}")
    R, J = link.R, link.J
    j_ave = float(critical_budgets(link)[m - 1])

    x = np.zeros(link.n)
    x[:m] = np.diff(J[:m + 1]) / J[m]
    y = np.zeros(link.n + 1)
    inv = 1.0 / R[:m + 1]
    y[:m + 1] = R[m] * np.diff(np.concatenate([[0.0], inv]))
    u, v, alpha, beta = 0.0, float(1.0 / J[m]), float(R[m]), 0.0

    cert = EquilibriumCertificate(x=x, y=y, u=u, v=v, alpha=alpha, beta=beta)
    game = build_bimatrix_jamming_game(link, j_ave)
    report = kkt_check(game, cert, tol=1e-10)
    if not report.passed:
        raise CertificateVerificationError(
            f"breakpoint certificate failed verification at m={m}: "
            f"{report.failed_names()}")
    return BreakpointEquilibrium(
        m=m, j_ave=j_ave, certificate=cert,
        transmitter_payoff=float(R[m]),
        jammer_payoff=v * j_ave,
    )


@dataclass(frozen=True)
class SweepRow:
    """One budget point of the throughput / destroyed-packets sweep."""

    j_ave: float
    throughput_closed: float
    throughput_lp: float
    jammer_zero_sum: float
    jammer_bimatrix: float
    cert_gap: float
    certified: bool = True


def sweep(link: JammingLink, budgets,
          opts: SolveOptions | None = None) -> list[SweepRow]:
    """Evaluate both games across jammer budgets.

    At each budget: zero-sum throughput in closed form and by LP oracle, the
    zero-sum destroyed-packet rate, and the jammer's certified equilibrium
    payoff in the bimatrix game (the best payoff among the equilibria the
    solver certifies, with its certificate objective recorded as the gap).
    A budget where the solver certifies nothing yields a row flagged
    ``certified=False`` with NaNs rather than being dropped.
    """
    opts = opts or SolveOptions()
    rows = []
    for raw in np.atleast_1d(np.asarray(budgets, dtype=np.float64)):
        j_ave = float(raw)
        closed = zero_sum_throughput(link, j_ave)
        oracle = zero_sum_throughput_lp(link, j_ave)
        zs = zero_sum_jammer_payoff(j_ave, link.max_power)
        game = build_bimatrix_jamming_game(link, j_ave)
        result: SolveResult = solve(game, opts)
        if result.found:
            payoffs = [expected_payoffs(game, e.certificate.x, e.certificate.y)[1]
                       for e in result.equilibria]
            best = int(np.argmax(payoffs))
            cert = result.equilibria[best].certificate
            rows.append(SweepRow(
                j_ave=j_ave, throughput_closed=closed, throughput_lp=oracle,
                jammer_zero_sum=zs, jammer_bimatrix=float(payoffs[best]),
                cert_gap=abs(qp_objective(game, cert)), certified=True))
        else:
            rows.append(SweepRow(
                j_ave=j_ave, throughput_closed=closed, throughput_lp=oracle,
                jammer_zero_sum=zs, jammer_bimatrix=float("nan"),
                cert_gap=float("nan"), certified=False))
    return rows


def rate_conversion(rate_bps: float, bandwidth_hz: float) -> float:
    """Convert a bit rate to nats per transmission at two samples per hertz.

    A channel of bandwidth W supports 2W transmissions per second, so
    rate_bps bits/s is rate_bps / (2W) bits per transmission, times ln 2
    for nats. 44 Mbps over 22 MHz is exactly one bit (ln 2 nats) per use.
    """
    if rate_bps <= 0 or bandwidth_hz <= 0:
        raise GameValidationError("rate and bandwidth must be positive")
    return rate_bps / (2.0 * bandwidth_hz) * math.log(2.0)


def wifi_default_link(n_rates: int = 8, noise: float = 1.0,
                      delta: float = 0.01, power_margin: float = 1.001,
                      rate_min_bps: float = 1e6, rate_max_bps: float = 54e6,
                      bandwidth_hz: float = 22e6) -> JammingLink:
    """A 802.11b-scale link: n rates log-spaced over 1..54 Mbps at 22 MHz.

    Transmit power sits just above the minimum for the top rate so the whole
    ladder is decodable without jamming.
    """
    hi = rate_conversion(rate_max_bps, bandwidth_hz)
    lo = rate_conversion(rate_min_bps, bandwidth_hz)
    rates = np.geomspace(hi, lo, n_rates)
    p_t = min_transmit_power(noise, float(rates[0])) * power_margin
    return jammer_action_set(rates, p_t, noise, delta)
