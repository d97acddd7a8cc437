"""Acceptance criteria, one test each.

Each test times its own work, records a PASS/FAIL line (printed at the end
of the run) and then asserts. The oracles here are written against numpy
directly, not through ``boxwell.validation``.
"""

import math
import time

import numpy as np
import pytest

from boxwell import (PhysicalParams, ReducedParams, build_matrix, eigenvalues_symmetric, reduce,
                     spectrum, split_parity)
from boxwell.analysis import residual_scaling_levels
from boxwell.hamiltonian import potential_elements
from boxwell.perturbation import (E2_COEFFICIENTS, e2_closed, e2_even_closed, e2_odd_closed,
                                  e2_series)

G_REF = 8 / math.pi**2


class Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def finish(record, number, name, ok, detail, clock, budget):
    ok = bool(ok) and clock.seconds < budget
    record(number, name, ok, detail, clock.seconds, budget)
    assert ok, detail


def phi(r, x):
    """Parity basis on [-1, 1], written out independently of boxwell.basis."""
    if r % 2 == 0:
        return np.cos((r + 1) * np.pi * x / 2)
    return np.sin((r + 1) * np.pi * x / 2)


def closed_vs_series_worst(coefficients=None):
    """Largest |closed - series| / max(1e-12, 1e-9 |closed|) over the criterion grid."""
    worst = 0.0
    for g in (0.01, G_REF, 5.0):
        for r in range(20):
            closed = e2_closed(r, g, coefficients)
            series = e2_series(r, g, 2000).value
            worst = max(worst, abs(closed - series) / max(1e-12, 1e-9 * abs(closed)))
    return worst


def test_criterion_1_free_box(record_criterion):
    p = PhysicalParams(mass=1.0, hbar=1.0, half_width=1.0, coupling=0.0)
    with Clock() as c:
        rp = reduce(p)
        ev = spectrum(64, rp, 10).eigenvalues * rp.epsilon
        exact = rp.epsilon * (np.arange(10) + 1.0) ** 2
        err = float(np.max(np.abs(ev - exact) / exact))
    finish(record_criterion, 1, "free-box anchor", err <= 1e-10, f"max rel err {err:.1e} <= 1e-10", c, 1.0)


def test_criterion_2_matrix_elements(record_criterion):
    with Clock() as c:
        x, w = np.polynomial.legendre.leggauss(128)
        basis = np.array([phi(r, x) for r in range(31)])
        oracle = (basis * (w * x**4)) @ basis.T
        idx = np.arange(31)
        rr, ss = np.meshgrid(idx, idx, indexing="ij")
        same = (rr + ss) % 2 == 0
        worst = max(float(np.max(np.abs(potential_elements(rr, ss, g) - g * oracle)[same]))
                    for g in (G_REF, 5.0))
        cross = float(np.max(np.abs(oracle[~same])))
    finish(record_criterion, 2, "matrix-element oracle", worst <= 1e-12 and cross <= 1e-12,
           f"same parity {worst:.1e}, opposite parity {cross:.1e}, both <= 1e-12", c, 5.0)


def test_criterion_3_closed_vs_series(record_criterion):
    with Clock() as c:
        worst = closed_vs_series_worst()
    finish(record_criterion, 3, "closed form vs series", worst <= 1.0,
           f"worst error / tolerance {worst:.1e} <= 1", c, 1.0)


def test_criterion_4_parity_families(record_criterion):
    with Clock() as c:
        worst = 0.0
        for r in range(51):
            for fam, ref in ((e2_even_closed(r, G_REF), e2_closed(2 * r, G_REF)),
                             (e2_odd_closed(r, G_REF), e2_closed(2 * r + 1, G_REF))):
                worst = max(worst, abs(fam - ref) / abs(ref))
    finish(record_criterion, 4, "parity families", worst <= 1e-14, f"max rel diff {worst:.1e} <= 1e-14", c, 0.1)


def test_criterion_5_residual_slope(record_criterion):
    with Clock() as c:
        reports = residual_scaling_levels(range(5), (0.02, 0.05, 0.1, 0.2), 256)
        slopes = [rep.fitted_slope for rep in reports]
    ok = all(s is not None and 2.8 <= s <= 3.2 for s in slopes)
    finish(record_criterion, 5, "truncation order", ok,
           "slopes " + ", ".join(f"{s:.3f}" for s in slopes) + " in [2.8, 3.2]", c, 30.0)


def test_criterion_6_eigensolver(record_criterion):
    with Clock() as c:
        rp = ReducedParams(g=G_REF)
        h = build_matrix(256, rp)
        full = eigenvalues_symmetric(h).eigenvalues
        trace_err = abs(math.fsum(full) - float(np.trace(h.to_dense()))) / abs(float(np.trace(h.to_dense())))
        blocks = split_parity(h)
        merged = np.sort(np.concatenate([eigenvalues_symmetric(blocks.even).eigenvalues,
                                         eigenvalues_symmetric(blocks.odd).eigenvalues]))
        block_err = float(np.max(np.abs(merged - full) / np.abs(full)))
        levels = [spectrum(n, rp, 8).eigenvalues for n in (32, 64, 128, 256)]
        rise = max(float(np.max(b - a)) for a, b in zip(levels, levels[1:]))
    ok = trace_err <= 1e-12 and block_err <= 1e-11 and rise <= 1e-10
    finish(record_criterion, 6, "eigensolver integrity", ok,
           f"trace {trace_err:.1e} <= 1e-12, blocks {block_err:.1e} <= 1e-11, "
           f"max rise on doubling {rise:.1e} <= 1e-10", c, 10.0)


def test_criterion_7_sign_split(record_criterion):
    with Clock() as c:
        bad = [(r, g) for g in (1e-3, 0.01, G_REF, 5.0, 100.0) for r in range(20)
               if not (e2_series(r, g).lower_sum >= 0.0 and e2_series(r, g).upper_sum <= 0.0)]
    finish(record_criterion, 7, "sign split", not bad, f"{len(bad)} violations", c, 1.0)


def test_criterion_8_mutation(record_criterion):
    with Clock() as c:
        base = [float(k) for k in E2_COEFFICIENTS]
        ratios = []
        for i in range(len(base)):
            mutated = list(base)
            mutated[i] *= 1 + 1e-6
            ratios.append(closed_vs_series_worst(mutated))
    ok = all(q > 1.0 for q in ratios)
    finish(record_criterion, 8, "mutation sensitivity", ok,
           "criterion 3 error / tolerance after mutation " + ", ".join(f"{q:.0f}" for q in ratios), c, 1.0)
