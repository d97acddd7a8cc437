"""Cross-method studies: perturbation theory against direct diagonalization.

Diagonalization of a large truncated Hamiltonian is the reference throughout;
the second-order energies are what is being tested.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .eigen import DEFAULT_TOL, spectrum
from .errors import DomainError
from .params import ReducedParams
from .perturbation import DEFAULT_S_MAX, e2_closed, e2_series, energy_rs2

__all__ = [
    "DEFAULT_G_GRID",
    "NOISE_FLOOR",
    "ResidualScalingReport",
    "EnergyRow",
    "EnergyTable",
    "loglog_slope",
    "residual_scaling",
    "residual_scaling_levels",
    "compare_table",
    "truncation_convergence",
]

DEFAULT_G_GRID = (0.02, 0.05, 0.1, 0.2)
# residuals below this are treated as indistinguishable from solver noise
NOISE_FLOOR = 1e-11


@dataclass(frozen=True)
class ResidualScalingReport:
    """``|E_rs2 - E_diag|`` against ``g`` for one level, with its log-log slope.

    ``excluded[i]`` is true when ``residuals[i]`` fell below the noise floor
    and was left out of the fit. ``fitted_slope`` is None if fewer than two
    points remain.
    """

    r: int
    g_values: tuple[float, ...]
    residuals: tuple[float, ...]
    fitted_slope: float | None
    excluded: tuple[bool, ...]


@dataclass(frozen=True)
class EnergyRow:
    r: int
    e_diag: float
    e_rs2: float
    e2_closed: float
    e2_series: float
    abs_diff_pert_diag: float
    rel_diff_closed_series: float


@dataclass(frozen=True)
class EnergyTable:
    rows: tuple[EnergyRow, ...]
    g: float
    n_matrix: int
    s_max: int
    tol: float
    warnings: tuple[str, ...] = ()


def loglog_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Ordinary least-squares slope of ``log y`` against ``log x``."""
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    slope, _ = np.polyfit(lx, ly, 1)
    return float(slope)


def _check_grid(g_values, min_points):
    g_values = tuple(float(g) for g in g_values)
    if len(g_values) < min_points:
        raise DomainError(f"need at least {min_points} coupling values, got {len(g_values)}")
    if any(g <= 0 for g in g_values):
        raise DomainError("coupling values must be positive (log g is taken)")
    if any(b <= a for a, b in zip(g_values, g_values[1:])):
        raise DomainError("coupling values must be strictly increasing")
    return g_values


def residual_scaling_levels(levels: Sequence[int], g_values: Sequence[float] = DEFAULT_G_GRID,
                            n_matrix: int = 256, tol: float = DEFAULT_TOL,
                            noise_floor: float = NOISE_FLOOR, min_points: int = 3,
                            parallel: bool = False) -> list[ResidualScalingReport]:
    """:func:`residual_scaling` for several levels, sharing one spectrum per ``g``."""
    g_values = _check_grid(g_values, min_points)
    levels = [int(r) for r in levels]
    if n_matrix < 4 * (max(levels) + 1):
        raise DomainError(f"n_matrix={n_matrix} is too small for level {max(levels)}")
    n_levels = max(levels) + 1

    def diag(g):
        return spectrum(n_matrix, ReducedParams(g=g), n_levels, tol).eigenvalues

    if parallel:
        with ThreadPoolExecutor() as pool:
            spectra = list(pool.map(diag, g_values))
    else:
        spectra = [diag(g) for g in g_values]

    reports = []
    for r in levels:
        res = tuple(abs(energy_rs2(r, ReducedParams(g=g)).total - float(ev[r]))
                    for g, ev in zip(g_values, spectra))
        excluded = tuple(x < noise_floor for x in res)
        keep = [(g, x) for g, x, e in zip(g_values, res, excluded) if not e]
        slope = loglog_slope(*zip(*keep)) if len(keep) >= 2 else None
        reports.append(ResidualScalingReport(r, g_values, res, slope, excluded))
    return reports


def residual_scaling(r: int, g_values: Sequence[float] = DEFAULT_G_GRID, n_matrix: int = 256,
                     tol: float = DEFAULT_TOL, noise_floor: float = NOISE_FLOOR,
                     min_points: int = 3) -> ResidualScalingReport:
    """How fast the second-order residual grows with ``g`` for level ``r``.

    Second-order truncation leaves an ``O(g**3)`` error, so the fitted
    log-log slope should be close to 3.
    """
    return residual_scaling_levels([r], g_values, n_matrix, tol, noise_floor, min_points)[0]


def _rel_diff(ref: float, other: float) -> float:
    d = abs(ref - other)
    return d / abs(ref) if ref != 0.0 else d


def compare_table(n_levels: int, rp: ReducedParams, n_matrix: int = 256,
                  s_max: int = DEFAULT_S_MAX, tol: float = DEFAULT_TOL) -> EnergyTable:
    """Diagonalized, perturbative, closed-form and series energies side by side."""
    if n_matrix < 4 * n_levels:
        raise DomainError(f"n_matrix must be at least 4 * n_levels = {4 * n_levels}")
    diag = spectrum(n_matrix, rp, n_levels, tol)
    rows = []
    for r in range(n_levels):
        closed = e2_closed(r, rp.g)
        series = e2_series(r, rp.g, max(s_max, r + 2)).value
        pert = energy_rs2(r, rp).total
        e_diag = float(diag.eigenvalues[r])
        rows.append(EnergyRow(r, e_diag, pert, closed, series,
                              abs(pert - e_diag), _rel_diff(closed, series)))
    return EnergyTable(tuple(rows), rp.g, n_matrix, s_max, tol, diag.warnings)


def truncation_convergence(r: int, rp: ReducedParams, n_list: Sequence[int],
                           tol: float = DEFAULT_TOL) -> list[tuple[int, float]]:
    """Eigenvalue ``r`` of the truncated Hamiltonian for each size in ``n_list``."""
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise DomainError("n_list must be strictly increasing")
    if n_list and n_list[0] < 4 * (r + 1):
        raise DomainError(f"every matrix size must be at least 4 (r + 1) = {4 * (r + 1)}")
    return [(n, float(spectrum(n, rp, r + 1, tol).eigenvalues[r])) for n in n_list]


def relative_gap(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), math.ulp(1.0))
