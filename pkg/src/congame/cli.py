"""Command-line interface.

Commands: solve, verify, best-response, jam-sweep, jam-gen. Exit codes are
a stable contract: 0 success, 1 input error, 2 no certified solution,
3 verification failure. All file outputs are deterministic for fixed inputs
and seed.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import jamming, serialize
from .errors import CongameError, GameValidationError
from .game import feasible_strategy
from .kkt import kkt_check
from .lp import best_response_col, best_response_row
from .solver import SolveMode, SolveOptions, solve

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_SOLUTION = 2
EXIT_VERIFY_FAILED = 3


def _parse_vector(text: str) -> np.ndarray:
    """Parse a bracketed comma list like "[0.25,0.25,0.5,0]"."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    try:
        return np.array([float(part) for part in body.split(",") if part.strip()],
                        dtype=np.float64)
    except ValueError as exc:
        raise GameValidationError(f"cannot parse vector {text!r}: {exc}") from exc


def _parse_grid(text: str, auto_max: float) -> np.ndarray:
    """Parse "count:lo:hi" where hi may be "auto" (the top jamming power)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise GameValidationError(f"grid must be count:lo:hi, got {text!r}")
    try:
        count = int(parts[0])
        lo = float(parts[1])
        hi = auto_max if parts[2] == "auto" else float(parts[2])
    except ValueError as exc:
        raise GameValidationError(f"cannot parse grid {text!r}: {exc}") from exc
    if count < 2:
        raise GameValidationError("grid count must be at least 2")
    return np.linspace(lo, hi, count)


def _solve_options(args) -> SolveOptions:
    return SolveOptions(mode=SolveMode(args.mode), tol_feas=args.tol_feas,
                        tol_cert=args.tol_cert, seed=args.seed)


def _link_from_args(args) -> jamming.JammingLink:
    if args.wifi_default:
        return jamming.wifi_default_link(delta=args.delta)
    if args.rates is None:
        raise GameValidationError("provide --rates (with --powers or --pt) "
                                  "or --wifi-default")
    rates = _parse_vector(args.rates)
    if args.powers is not None:
        return jamming.JammingLink.from_powers(rates, _parse_vector(args.powers))
    if args.pt is None:
        raise GameValidationError("provide --powers or --pt with --rates")
    return jamming.jammer_action_set(rates, args.pt, args.noise, args.delta)


def cmd_solve(args) -> int:
    game = serialize.load_game(args.game)
    result = solve(game, _solve_options(args))
    text = serialize._dumps(serialize.result_to_list(result))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if not result.found:
        print("no certified solution found "
              f"(method={result.method})", file=sys.stderr)
        return EXIT_NO_SOLUTION
    print(f"{len(result.equilibria)} certified equilibrium(s) "
          f"via {result.method}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    game = serialize.load_game(args.game)
    certs = serialize.load_certificates(args.certificate)
    all_passed = True
    for idx, cert in enumerate(certs):
        report = kkt_check(game, cert, tol=args.tol)
        if len(certs) > 1:
            print(f"certificate {idx}:")
        for line in report.lines():
            print(line)
        all_passed = all_passed and report.passed
    return EXIT_OK if all_passed else EXIT_VERIFY_FAILED


def cmd_best_response(args) -> int:
    game = serialize.load_game(args.game)
    if (args.row is None) == (args.col is None):
        raise GameValidationError("give exactly one of --row or --col")
    if args.row is not None:
        y = _parse_vector(args.row)
        if not feasible_strategy(game.j, game.j_ave, y):
            raise GameValidationError("provided strategy is not feasible "
                                      "for the column player")
        strategy, value = best_response_row(game, y)
    else:
        x = _parse_vector(args.col)
        if not feasible_strategy(game.r, game.r_ave, x):
            raise GameValidationError("provided strategy is not feasible "
                                      "for the row player")
        strategy, value = best_response_col(game, x)
    print("[" + ", ".join(serialize.fmt(v) for v in strategy) + "]")
    print(f"value {serialize.fmt(value)}")
    return EXIT_OK


def cmd_jam_sweep(args) -> int:
    link = _link_from_args(args)
    budgets = _parse_grid(args.grid, link.max_power)
    if np.any(budgets < 0) or np.any(budgets > link.max_power):
        raise GameValidationError(
            f"grid budgets must lie in [0, {link.max_power}]")
    rows = jamming.sweep(link, budgets, _solve_options(args))
    serialize.dump_sweep(rows, args.out)
    for row in rows:
        if not row.certified:
            print(f"warning: no certified equilibrium at j_ave="
                  f"{serialize.fmt(row.j_ave)}", file=sys.stderr)
        elif row.cert_gap > args.tol_cert:
            print(f"warning: certificate gap {row.cert_gap:.3e} at "
                  f"j_ave={serialize.fmt(row.j_ave)}", file=sys.stderr)
    meeting = next((row.j_ave for row in rows
                    if row.certified and not math.isnan(row.jammer_bimatrix)
                    and abs(row.jammer_bimatrix - row.jammer_zero_sum) <= 1e-9),
                   None)
    threshold = jamming.jamming_threshold(link) if link.n >= 2 else 0.0
    if meeting is not None:
        print(f"note: bimatrix and zero-sum jammer payoffs first meet at "
              f"j_ave={serialize.fmt(meeting)} "
              f"(threshold {serialize.fmt(threshold)})", file=sys.stderr)
    return EXIT_OK


def cmd_jam_gen(args) -> int:
    link = _link_from_args(args)
    game = jamming.build_bimatrix_jamming_game(link, args.j_ave)
    serialize.dump_game(game, args.out)
    print(f"wrote {game.m}x{game.n} game (j_ave={serialize.fmt(args.j_ave)}, "
          f"threshold={serialize.fmt(jamming.jamming_threshold(link))})",
          file=sys.stderr)
    return EXIT_OK


def _add_solver_flags(parser) -> None:
    parser.add_argument("--tol-feas", type=float, default=1e-9, dest="tol_feas")
    parser.add_argument("--tol-cert", type=float, default=1e-7, dest="tol_cert")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--mode", choices=[m.value for m in SolveMode],
                        default="auto")


def _add_link_flags(parser) -> None:
    parser.add_argument("--rates", help="bracketed or comma list, decreasing")
    parser.add_argument("--powers", help="jamming powers, first must be 0")
    parser.add_argument("--pt", type=float, help="transmit power")
    parser.add_argument("--noise", type=float, default=1.0)
    parser.add_argument("--delta", type=float, default=0.01,
                        help="pad above each decodability threshold, in units of noise")
    parser.add_argument("--wifi-default", action="store_true", dest="wifi_default",
                        help="8 log-spaced rates over 1..54 Mbps at 22 MHz")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congame",
        description="Constrained bimatrix games: solve, verify, and sweep "
                    "the power-limited jamming model.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute certified equilibria of a game file")
    p.add_argument("game")
    p.add_argument("--out", help="result JSON path (default: stdout)")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate against a game")
    p.add_argument("game")
    p.add_argument("certificate")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("best-response", help="one player's constrained best response")
    p.add_argument("game")
    p.add_argument("--row", help="column strategy y; prints the row response")
    p.add_argument("--col", help="row strategy x; prints the column response")
    p.set_defaults(func=cmd_best_response)

    p = sub.add_parser("jam-sweep", help="budget sweep of throughput and "
                                         "destroyed packets")
    _add_link_flags(p)
    p.add_argument("--grid", default="50:0:auto", help="count:lo:hi, hi may be 'auto'")
    p.add_argument("--out", required=True, help="CSV output path")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_jam_sweep)

    p = sub.add_parser("jam-gen", help="emit a jamming link's game file")
    _add_link_flags(p)
    p.add_argument("--j-ave", type=float, required=True, dest="j_ave")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_jam_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GameValidationError, CongameError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
