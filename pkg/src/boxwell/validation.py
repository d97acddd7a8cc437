"""Self-checks run by ``boxwell validate``.

Each check returns a :class:`CheckResult`; none of them raise on a failed
comparison. The thresholds are the package's acceptance tolerances.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .analysis import DEFAULT_G_GRID, residual_scaling_levels
from .basis import gauss_legendre, quadrature_x4_element
from .eigen import eigenvalues_symmetric, spectrum
from .hamiltonian import build_matrix, potential_elements, split_parity
from .params import ReducedParams
from .perturbation import e2_closed, e2_even_closed, e2_odd_closed, e2_series

__all__ = [
    "CheckResult",
    "G_REFERENCE",
    "check_free_box",
    "check_matrix_elements",
    "check_closed_vs_series",
    "check_parity_families",
    "check_residual_slope",
    "check_eigensolver",
    "check_sign_split",
    "run_all",
]

# g for lambda = m = hbar = a = 1
G_REFERENCE = 8.0 / math.pi**2


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail = fn()
    return CheckResult(name, bool(ok), detail, time.perf_counter() - t0)


def check_free_box(n: int = 64, levels: int = 10) -> CheckResult:
    def run():
        ev = spectrum(n, ReducedParams(g=0.0), levels).eigenvalues
        exact = (np.arange(levels) + 1.0) ** 2
        err = float(np.max(np.abs(ev - exact) / exact))
        return err <= 1e-10, f"max rel err {err:.2e} (<= 1e-10)"
    return _timed("free_box", run)


def check_matrix_elements(max_index: int = 30, g_values: Sequence[float] = (G_REFERENCE, 5.0),
                          n_points: int = 128) -> CheckResult:
    """Closed-form potential elements against Gauss-Legendre quadrature (``a = 1``)."""
    def run():
        rule = gauss_legendre(n_points, 1.0)
        idx = range(max_index + 1)
        oracle = np.array([[quadrature_x4_element(r, s, 1.0, rule) for s in idx] for r in idx])
        rr, ss = np.meshgrid(np.arange(max_index + 1), np.arange(max_index + 1), indexing="ij")
        same = (rr + ss) % 2 == 0
        worst_same = 0.0
        for g in g_values:
            closed = potential_elements(rr, ss, g)
            # on a = 1 the reduced element is g times the x**4 integral
            worst_same = max(worst_same, float(np.max(np.abs(closed - g * oracle)[same])))
        worst_cross = float(np.max(np.abs(oracle[~same])))
        ok = worst_same <= 1e-12 and worst_cross <= 1e-12
        return ok, f"same-parity {worst_same:.2e}, cross-parity {worst_cross:.2e} (<= 1e-12)"
    return _timed("matrix_elements", run)


def check_closed_vs_series(levels: int = 20, g_values: Sequence[float] = (0.01, G_REFERENCE, 5.0),
                           s_max: int = 2000, coefficients=None) -> CheckResult:
    def run():
        worst = 0.0
        ok = True
        for g in g_values:
            for r in range(levels):
                closed = e2_closed(r, g, coefficients)
                series = e2_series(r, g, s_max).value
                diff = abs(closed - series)
                if diff > max(1e-12, 1e-9 * abs(closed)):
                    ok = False
                worst = max(worst, diff / abs(closed) if closed else diff)
        return ok, f"max rel diff {worst:.2e} (<= 1e-9)"
    return _timed("closed_vs_series", run)


def check_parity_families(kmax: int = 50, g: float = 1.0) -> CheckResult:
    def run():
        worst = 0.0
        for k in range(kmax + 1):
            for a, b in ((e2_even_closed(k, g), e2_closed(2 * k, g)),
                         (e2_odd_closed(k, g), e2_closed(2 * k + 1, g))):
                worst = max(worst, abs(a - b) / abs(b))
        return worst <= 1e-14, f"max rel diff {worst:.2e} (<= 1e-14)"
    return _timed("parity_families", run)


def check_residual_slope(levels: Sequence[int] = range(5), g_values=DEFAULT_G_GRID,
                         n_matrix: int = 256) -> CheckResult:
    def run():
        reports = residual_scaling_levels(list(levels), g_values, n_matrix)
        slopes = [rep.fitted_slope for rep in reports]
        ok = all(s is not None and 2.8 <= s <= 3.2 for s in slopes)
        shown = ", ".join("n/a" if s is None else f"{s:.3f}" for s in slopes)
        return ok, f"slopes [{shown}] (in [2.8, 3.2])"
    return _timed("residual_slope", run)


def check_eigensolver(g: float = G_REFERENCE) -> CheckResult:
    def run():
        rp = ReducedParams(g=g)
        m = build_matrix(128, rp)
        full = eigenvalues_symmetric(m).eigenvalues
        trace_err = abs(math.fsum(full) - m.trace()) / abs(m.trace())
        blocks = split_parity(m)
        merged = np.sort(np.concatenate([eigenvalues_symmetric(blocks.even).eigenvalues,
                                         eigenvalues_symmetric(blocks.odd).eigenvalues]))
        block_err = float(np.max(np.abs(merged - full) / np.abs(full)))
        rise = 0.0
        prev = None
        for n in (32, 64, 128, 256):
            ev = spectrum(n, rp, 8).eigenvalues
            if prev is not None:
                rise = max(rise, float(np.max(ev - prev)))
            prev = ev
        ok = trace_err <= 1e-12 and block_err <= 1e-11 and rise <= 1e-10
        return ok, (f"trace {trace_err:.1e} (<= 1e-12), blocks {block_err:.1e} (<= 1e-11), "
                    f"max rise on doubling n {rise:.1e} (<= 1e-10)")
    return _timed("eigensolver", run)


def check_sign_split(levels: int = 20, g_values: Sequence[float] = (0.01, G_REFERENCE, 5.0)) -> CheckResult:
    def run():
        bad = [(r, g) for g in g_values for r in range(levels)
               if not (e2_series(r, g).lower_sum >= 0.0 and e2_series(r, g).upper_sum <= 0.0)]
        return not bad, "all lower sums >= 0 and upper sums <= 0" if not bad else f"violations at {bad}"
    return _timed("sign_split", run)


def run_all(quick: bool = False, coefficients=None) -> list[CheckResult]:
    """Run every check. ``quick`` skips the residual-slope study."""
    results = [
        check_free_box(),
        check_matrix_elements(),
        check_closed_vs_series(coefficients=coefficients),
        check_parity_families(),
        check_eigensolver(),
        check_sign_split(),
    ]
    if not quick:
        results.insert(4, check_residual_slope())
    return results
