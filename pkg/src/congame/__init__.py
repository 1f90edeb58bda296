"""Constrained bimatrix games.

Model two-player games whose mixed strategies must respect per-player
average-cost caps, verify Nash equilibria through a fourteen-condition
certificate, compute equilibria via a zero-objective quadratic-program
certificate, and reproduce a packetized-link jamming study end to end.
"""

from .errors import (
    BudgetOutOfRangeError,
    CertificateVerificationError,
    CongameError,
    DimensionMismatchError,
    EmptyFeasibleSetError,
    GameValidationError,
    InvalidStrategyError,
    LpNumericalError,
    NegativeThresholdError,
    NegativeWeightError,
    NonFiniteEntryError,
    SchemaError,
)
from .game import (
    ConstrainedGame,
    MixedStrategy,
    StrategyProfile,
    existence_condition,
    expected_payoffs,
    feasible_profile,
    feasible_strategy,
    is_properly_constrained,
    validate_game,
)
from .jamming import (
    BreakpointEquilibrium,
    JammingLink,
    SweepRow,
    build_bimatrix_jamming_game,
    closed_form_equilibrium,
    critical_budgets,
    jammer_action_set,
    jammer_matrix,
    jamming_threshold,
    min_transmit_power,
    rate_conversion,
    sweep,
    threshold_powers,
    transmitter_matrix,
    wifi_default_link,
    zero_sum_jammer_payoff,
    zero_sum_throughput,
    zero_sum_throughput_lp,
)
from .kkt import (
    EquilibriumCertificate,
    KktReport,
    QpPoint,
    equilibrium_payoffs_from_multipliers,
    kkt_check,
    recover_multipliers,
)
from .lp import (
    LpProblem,
    LpSolution,
    LpStatus,
    best_response_col,
    best_response_row,
    interpreted_kernel,
    lp_solve,
    nash_gap,
    simplex_backend,
)
from .solver import (
    CertifiedEquilibrium,
    SolveDiagnostics,
    SolveMode,
    SolveOptions,
    SolveResult,
    Violation,
    certify_global,
    qp_feasible,
    qp_objective,
    random_feasible_strategy,
    solve,
    solve_iterative,
    solve_support_enumeration,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
