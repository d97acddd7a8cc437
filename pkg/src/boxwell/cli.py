"""Command-line front end.

Subcommands: ``spectrum``, ``perturb``, ``validate``, ``sweep`` and
``dump-matrix``. Energies are written in physical units unless ``--reduced``
is given. Every float is printed with ``%.17g`` so that repeated runs are
byte-identical and values round-trip exactly.

Exit codes: 0 success, 1 failed validation, 2 invalid input, 3 eigensolver
did not converge.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .analysis import EnergyTable, compare_table, residual_scaling_levels
from .errors import ConvergenceError, InvalidParameterError, DomainError
from .hamiltonian import build_matrix
from .params import PhysicalParams, ReducedParams, reduce
from .perturbation import DEFAULT_S_MAX, E2_COEFFICIENTS, energy_rs2
from .validation import run_all

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_NO_CONVERGENCE = 3

# option name -> (config key, type)
_OPTIONS = {
    "mass": float,
    "hbar": float,
    "half_width": float,
    "coupling": float,
    "levels": int,
    "matrix_size": int,
    "s_max": int,
    "tol": float,
    "r": int,
    "format": str,
    "output": str,
    "reduced": bool,
    "e2_source": str,
    "parallel": bool,
    "quick": bool,
    "g_min": float,
    "g_max": float,
    "steps": int,
}

_DEFAULTS = {
    "mass": 1.0,
    "hbar": 1.0,
    "half_width": 1.0,
    "coupling": 1.0,
    "levels": 10,
    "matrix_size": 256,
    "s_max": DEFAULT_S_MAX,
    "tol": 1e-12,
    "r": 0,
    "format": "csv",
    "output": None,
    "reduced": False,
    "e2_source": "closed",
    "parallel": False,
    "quick": False,
    "g_min": 0.02,
    "g_max": 0.2,
    "steps": 4,
}


@dataclass(frozen=True)
class RunConfig:
    params: PhysicalParams
    n_matrix: int = 256
    n_levels: int = 10
    s_max: int = DEFAULT_S_MAX
    tol: float = 1e-12
    r: int = 0
    fmt: str = "csv"
    output: str | None = None
    reduced: bool = False
    e2_source: str = "closed"
    parallel: bool = False
    quick: bool = False
    g_min: float = 0.02
    g_max: float = 0.2
    steps: int = 4


# --------------------------------------------------------------------------
# config handling


def parse_config_file(path: str) -> dict[str, Any]:
    """Read flat ``key = value`` lines; ``#`` starts a comment.

    Keys use the long flag names, with ``-`` or ``_`` (``half-width`` and
    ``half_width`` are the same key).
    """
    values: dict[str, Any] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InvalidParameterError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _OPTIONS:
                raise InvalidParameterError(f"{path}:{lineno}: unknown key {key!r}")
            kind = _OPTIONS[key]
            try:
                if kind is bool:
                    if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                        raise ValueError(value)
                    values[key] = value.lower() in ("true", "1", "yes")
                else:
                    values[key] = kind(value)
            except ValueError:
                raise InvalidParameterError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, the optional config file, and explicit flags (in that order)."""
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        merged.update(parse_config_file(args.config))
    for key in _OPTIONS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value

    params = PhysicalParams(merged["mass"], merged["hbar"], merged["half_width"], merged["coupling"])
    if merged["format"] not in ("csv", "json"):
        raise InvalidParameterError(f"format must be csv or json, got {merged['format']!r}")
    if merged["e2_source"] not in ("closed", "series"):
        raise InvalidParameterError(f"e2-source must be closed or series, got {merged['e2_source']!r}")
    if merged["levels"] < 1:
        raise InvalidParameterError("levels must be at least 1")
    if merged["matrix_size"] < 1:
        raise InvalidParameterError("matrix-size must be at least 1")
    if not 0 < merged["tol"] < 1:
        raise InvalidParameterError("tol must lie in (0, 1)")
    if merged["r"] < 0:
        raise InvalidParameterError("r must be non-negative")
    if merged["steps"] < 1:
        raise InvalidParameterError("steps must be at least 1")
    return RunConfig(
        params=params,
        n_matrix=merged["matrix_size"],
        n_levels=merged["levels"],
        s_max=merged["s_max"],
        tol=merged["tol"],
        r=merged["r"],
        fmt=merged["format"],
        output=merged["output"],
        reduced=merged["reduced"],
        e2_source=merged["e2_source"],
        parallel=merged["parallel"],
        quick=merged["quick"],
        g_min=merged["g_min"],
        g_max=merged["g_max"],
        steps=merged["steps"],
    )


# --------------------------------------------------------------------------
# serialization


def fmt_float(x: float) -> str:
    return "%.17g" % x


def to_json(obj: Any) -> str:
    """JSON text with every float rendered by :func:`fmt_float`."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise ValueError("non-finite value cannot be written as JSON")
        return fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    def cell(v):
        if v is None:
            return ""
        if isinstance(v, bool):
            return "1" if v else "0"
        if isinstance(v, (float, np.floating)):
            return fmt_float(float(v))
        return str(v)

    lines = [",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _params_record(cfg: RunConfig, g: float | None = None) -> dict:
    rp = reduce(cfg.params)
    record = dataclasses.asdict(cfg.params)
    record["epsilon"] = rp.epsilon
    record["g"] = rp.g if g is None else g
    return record


def _scale(cfg: RunConfig) -> float:
    return 1.0 if cfg.reduced else reduce(cfg.params).epsilon


def _units(cfg: RunConfig) -> str:
    return "reduced" if cfg.reduced else "physical"


def _table_levels(table: EnergyTable, scale: float) -> list[dict]:
    return [
        {
            "r": row.r,
            "e_diag": row.e_diag * scale,
            "e_rs2": row.e_rs2 * scale,
            "e2_closed": row.e2_closed * scale,
            "e2_series": row.e2_series * scale,
            "abs_diff": row.abs_diff_pert_diag * scale,
            "rel_diff_closed_series": row.rel_diff_closed_series,
        }
        for row in table.rows
    ]


_LEVEL_COLUMNS = ("r", "e_diag", "e_rs2", "e2_closed", "e2_series", "abs_diff", "rel_diff_closed_series")


def _emit(cfg: RunConfig, text: str, stdout) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


# --------------------------------------------------------------------------
# subcommands


def cmd_spectrum(cfg: RunConfig, stdout=sys.stdout) -> int:
    table = compare_table(cfg.n_levels, reduce(cfg.params), cfg.n_matrix, cfg.s_max, cfg.tol)
    levels = _table_levels(table, _scale(cfg))
    if cfg.fmt == "json":
        doc = {
            "params": _params_record(cfg),
            "levels": levels,
            "meta": {"n_matrix": cfg.n_matrix, "tol": cfg.tol, "s_max": cfg.s_max,
                     "units": _units(cfg), "warnings": list(table.warnings)},
        }
        text = to_json(doc) + "\n"
    else:
        text = to_csv(_LEVEL_COLUMNS, [[lv[c] for c in _LEVEL_COLUMNS] for lv in levels])
    _emit(cfg, text, stdout)
    return EXIT_OK


def cmd_perturb(cfg: RunConfig, stdout=sys.stdout) -> int:
    b = energy_rs2(cfg.r, reduce(cfg.params), cfg.e2_source, cfg.s_max)
    k = _scale(cfg)
    record = {"r": b.r, "e0": b.e0 * k, "e1": b.e1 * k, "e2": b.e2 * k, "total": b.total * k,
              "e2_source": b.e2_source}
    if cfg.fmt == "json":
        doc = {"params": _params_record(cfg), "breakdown": record,
               "meta": {"units": _units(cfg), "s_max": cfg.s_max}}
        text = to_json(doc) + "\n"
    else:
        cols = ("r", "e0", "e1", "e2", "total", "e2_source")
        text = to_csv(cols, [[record[c] for c in cols]])
    _emit(cfg, text, stdout)
    return EXIT_OK


def _color(text: str, code: str, stream) -> str:
    if os.environ.get("BOXWELL_NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[{code}m{text}\033[0m"


def cmd_validate(cfg: RunConfig, stdout=sys.stdout, mutate_coefficient: int | None = None) -> int:
    coefficients = None
    if mutate_coefficient is not None:
        if not 0 <= mutate_coefficient < len(E2_COEFFICIENTS):
            raise InvalidParameterError(f"coefficient index must lie in [0, {len(E2_COEFFICIENTS) - 1}]")
        coefficients = [float(c) for c in E2_COEFFICIENTS]
        coefficients[mutate_coefficient] *= 1.0 + 1e-6
    results = run_all(quick=cfg.quick, coefficients=coefficients)
    for res in results:
        tag = _color("PASS", "32", stdout) if res.passed else _color("FAIL", "31", stdout)
        stdout.write(f"{tag} {res.name}: {res.detail} [{res.seconds:.2f} s]\n")
    ok = all(res.passed for res in results)
    stdout.write(f"{sum(r.passed for r in results)}/{len(results)} checks passed\n")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_sweep(cfg: RunConfig, stdout=sys.stdout) -> int:
    if not 0 < cfg.g_min < cfg.g_max:
        raise InvalidParameterError("need 0 < g-min < g-max")
    g_values = tuple(float(g) for g in np.geomspace(cfg.g_min, cfg.g_max, cfg.steps))
    # geomspace pins the endpoints only up to rounding
    g_values = (cfg.g_min,) + g_values[1:-1] + ((cfg.g_max,) if cfg.steps > 1 else ())
    report = residual_scaling_levels([cfg.r], g_values, cfg.n_matrix, cfg.tol,
                                     min_points=1, parallel=cfg.parallel)[0]
    k = _scale(cfg)
    n_levels = max(cfg.n_levels, cfg.r + 1)
    tables = [compare_table(n_levels, ReducedParams(reduce(cfg.params).epsilon, g), cfg.n_matrix,
                            cfg.s_max, cfg.tol) for g in g_values]
    if cfg.fmt == "json":
        doc = {
            "params": _params_record(cfg),
            "report": {"r": report.r, "g_values": list(report.g_values),
                       "residuals": [x * k for x in report.residuals],
                       "excluded": list(report.excluded), "fitted_slope": report.fitted_slope},
            "tables": [{"g": g, "levels": _table_levels(t, k)} for g, t in zip(g_values, tables)],
            "meta": {"n_matrix": cfg.n_matrix, "tol": cfg.tol, "s_max": cfg.s_max, "units": _units(cfg)},
        }
        text = to_json(doc) + "\n"
    else:
        rows = [[report.r, g, x * k, e, report.fitted_slope]
                for g, x, e in zip(report.g_values, report.residuals, report.excluded)]
        text = to_csv(("r", "g", "residual", "excluded", "fitted_slope"), rows)
    _emit(cfg, text, stdout)
    return EXIT_OK


def cmd_dump_matrix(cfg: RunConfig, stdout=sys.stdout) -> int:
    m = build_matrix(cfg.n_matrix, reduce(cfg.params)).to_dense() * _scale(cfg)
    n = cfg.n_matrix
    entries = [(i, j, float(m[i, j])) for i in range(n) for j in range(n)]
    if cfg.fmt == "json":
        doc = {"params": _params_record(cfg), "n": n, "units": _units(cfg),
               "entries": [list(e) for e in entries]}
        text = to_json(doc) + "\n"
    else:
        text = to_csv(("row", "col", "value"), entries)
    _emit(cfg, text, stdout)
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    phys = common.add_argument_group("physical parameters")
    phys.add_argument("--mass", type=float, help="particle mass (default 1)")
    phys.add_argument("--hbar", type=float, help="reduced Planck constant (default 1)")
    phys.add_argument("--half-width", dest="half_width", type=float, help="box half-width a (default 1)")
    phys.add_argument("--coupling", type=float, help="quartic coupling lambda (default 1)")
    num = common.add_argument_group("numerics and output")
    num.add_argument("--levels", type=int, help="number of levels (default 10)")
    num.add_argument("--matrix-size", dest="matrix_size", type=int, help="Hamiltonian dimension (default 256)")
    num.add_argument("--s-max", dest="s_max", type=int, help="series cutoff (default 2000)")
    num.add_argument("--tol", type=float, help="Jacobi tolerance relative to ||H||_F (default 1e-12)")
    num.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    num.add_argument("--output", help="write to PATH instead of standard output")
    num.add_argument("--reduced", action="store_const", const=True,
                     help="report energies in units of epsilon")
    num.add_argument("--config", help="key = value configuration file; flags override it")
    num.add_argument("--parallel", action="store_const", const=True, help="run sweep cells concurrently")

    parser = argparse.ArgumentParser(
        prog="boxwell",
        description="Eigenvalues of the box-confined quartic oscillator by diagonalization "
                    "and second-order perturbation theory.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("spectrum", parents=[common], help="diagonalized vs. perturbative energy table")

    p = sub.add_parser("perturb", parents=[common], help="perturbative breakdown of one level")
    p.add_argument("--r", type=int, help="quantum number (default 0)")
    p.add_argument("--e2-source", dest="e2_source", choices=("closed", "series"),
                   help="closed form or direct summation for the second-order term")

    p = sub.add_parser("validate", parents=[common], help="run the built-in oracle checks")
    p.add_argument("--quick", action="store_const", const=True, help="skip the residual-slope study")
    p.add_argument("--mutate-coefficient", dest="mutate_coefficient", type=int, help=argparse.SUPPRESS)

    p = sub.add_parser("sweep", parents=[common], help="residual scaling over a coupling grid")
    p.add_argument("--r", type=int, help="quantum number (default 0)")
    p.add_argument("--g-min", dest="g_min", type=float, help="smallest reduced coupling (default 0.02)")
    p.add_argument("--g-max", dest="g_max", type=float, help="largest reduced coupling (default 0.2)")
    p.add_argument("--steps", type=int, help="number of log-spaced couplings (default 4)")

    sub.add_parser("dump-matrix", parents=[common], help="write the Hamiltonian as row,col,value")
    return parser


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "perturb": cmd_perturb,
    "sweep": cmd_sweep,
    "dump-matrix": cmd_dump_matrix,
}


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = build_config(args)
        if args.command == "validate":
            return cmd_validate(cfg, stdout, args.mutate_coefficient)
        return _COMMANDS[args.command](cfg, stdout)
    except (InvalidParameterError, DomainError) as exc:
        stderr.write(f"boxwell: error: {exc}\n")
        return EXIT_INVALID
    except ConvergenceError as exc:
        stderr.write(f"boxwell: eigensolver failed: {exc}\n")
        return EXIT_NO_CONVERGENCE
    except OSError as exc:
        stderr.write(f"boxwell: error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
