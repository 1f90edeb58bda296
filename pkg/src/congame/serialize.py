"""File formats: game and certificate JSON, solve results, sweep CSV.

All numeric output is printed at 12 significant digits, enough to exceed
every verification tolerance while keeping reruns byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import SchemaError
from .game import ConstrainedGame, validate_game
from .jamming import SweepRow
from .kkt import EquilibriumCertificate, QpPoint
from .solver import SolveResult

CERT_FIELDS = ("x", "y", "u", "v", "alpha", "beta")


def fmt(value: float) -> str:
    """Render a float at 12 significant digits."""
    return format(float(value), ".12g")


def _round12(value: float) -> float:
    return float(fmt(value))


def _vector12(vec) -> list[float]:
    return [_round12(v) for v in np.asarray(vec, dtype=np.float64)]


def load_game(path: str | Path) -> ConstrainedGame:
    """Read and validate a game JSON file."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    return validate_game(data)


def game_to_dict(game: ConstrainedGame) -> dict:
    return {
        "A": [_vector12(row) for row in game.A],
        "B": [_vector12(row) for row in game.B],
        "r": _vector12(game.r),
        "j": _vector12(game.j),
        "r_ave": _round12(game.r_ave),
        "j_ave": _round12(game.j_ave),
    }


def dump_game(game: ConstrainedGame, path: str | Path) -> None:
    Path(path).write_text(_dumps(game_to_dict(game)), encoding="utf-8")


def certificate_to_dict(cert: QpPoint) -> dict:
    return {
        "x": _vector12(cert.x),
        "y": _vector12(cert.y),
        "u": _round12(cert.u),
        "v": _round12(cert.v),
        "alpha": _round12(cert.alpha),
        "beta": _round12(cert.beta),
    }


def certificate_from_dict(data: dict) -> EquilibriumCertificate:
    for field in CERT_FIELDS:
        if field not in data:
            raise SchemaError(f"certificate is missing field '{field}'")
    try:
        return EquilibriumCertificate(
            x=np.asarray(data["x"], dtype=np.float64),
            y=np.asarray(data["y"], dtype=np.float64),
            u=float(data["u"]), v=float(data["v"]),
            alpha=float(data["alpha"]), beta=float(data["beta"]))
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"malformed certificate field: {exc}") from exc


def load_certificates(path: str | Path) -> list[EquilibriumCertificate]:
    """Read one certificate or a solve-result list from JSON."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    if isinstance(data, dict):
        entries = [data]
    elif isinstance(data, list) and data:
        entries = data
    else:
        raise SchemaError(f"{path}: expected a certificate object or a "
                          "nonempty list of them")
    return [certificate_from_dict(e) for e in entries]


def result_to_list(result: SolveResult) -> list[dict]:
    out = []
    for entry in result.equilibria:
        record = certificate_to_dict(entry.certificate)
        record["qp_objective"] = _round12(entry.qp_objective)
        record["method"] = result.method
        out.append(record)
    return out


def dump_result(result: SolveResult, path: str | Path) -> None:
    Path(path).write_text(_dumps(result_to_list(result)), encoding="utf-8")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


SWEEP_HEADER = ("j_ave,throughput_closed,throughput_lp,"
                "jammer_zero_sum,jammer_bimatrix,cert_gap")


def sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    """Render sweep rows as CSV with LF line endings."""
    lines = [SWEEP_HEADER]
    for row in rows:
        lines.append(",".join(fmt(v) for v in (
            row.j_ave, row.throughput_closed, row.throughput_lp,
            row.jammer_zero_sum, row.jammer_bimatrix, row.cert_gap)))
    return "\n".join(lines) + "\n"


def dump_sweep(rows: Sequence[SweepRow], path: str | Path) -> None:
    Path(path).write_text(sweep_to_csv(rows), encoding="utf-8", newline="\n")
