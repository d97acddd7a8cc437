"""Dense symmetric eigenvalues by cyclic Jacobi rotations.

Rotations are applied in round-robin (tournament) order: each sweep is
``n - 1`` rounds of ``n // 2`` disjoint rotations, so a round is one
vectorized two-sided update. The ordering is fixed, which makes the solver
deterministic for identical input.

On the box Hamiltonian, whose diagonal grows like ``(r+1)**2``, Jacobi keeps
the low eigenvalues accurate relative to their own size rather than to the
matrix norm. The perturbative residual study relies on this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError
from .hamiltonian import SymmetricMatrix, build_matrix, split_parity
from .params import ReducedParams

__all__ = [
    "SpectrumResult",
    "eigenvalues_symmetric",
    "spectrum",
    "DEFAULT_TOL",
    "DEFAULT_MAX_SWEEPS",
]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_SWEEPS = 100


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    n: int
    iterations: int
    off_diag_norm: float
    warnings: tuple[str, ...] = field(default=())


@lru_cache(maxsize=32)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=np.intp), np.array(q, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    # direct sum over off-diagonal entries; ||A||^2 - ||diag||^2 cancels badly
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a: np.ndarray, p: np.ndarray, q: np.ndarray) -> None:
    apq = a[p, q]
    app = a[p, p]
    aqq = a[q, q]
    # skip rotations whose off-diagonal element is negligible against both pivots
    small = (np.abs(app) + 100.0 * np.abs(apq) == np.abs(app)) & \
            (np.abs(aqq) + 100.0 * np.abs(apq) == np.abs(aqq))
    live = (apq != 0.0) & ~small
    if not np.any(live):
        a[p[small], q[small]] = 0.0
        a[q[small], p[small]] = 0.0
        return
    safe = np.where(live, apq, 1.0)
    with np.errstate(over="ignore"):
        theta = (aqq - app) / (2.0 * safe)
        t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(theta == 0.0, 1.0, t)
    t = np.where(live, t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    rp = a[p, :].copy()
    rq = a[q, :].copy()
    a[p, :] = c[:, None] * rp - s[:, None] * rq
    a[q, :] = s[:, None] * rp + c[:, None] * rq
    cp = a[:, p].copy()
    cq = a[:, q].copy()
    a[:, p] = c * cp - s * cq
    a[:, q] = s * cp + c * cq

    tapq = t * apq
    a[p, p] = app - tapq
    a[q, q] = aqq + tapq
    a[p, q] = 0.0
    a[q, p] = 0.0


def eigenvalues_symmetric(m, tol: float = DEFAULT_TOL,
                          max_sweeps: int = DEFAULT_MAX_SWEEPS) -> SpectrumResult:
    """Eigenvalues of a real symmetric matrix, ascending.

    Parameters
    ----------
    m : SymmetricMatrix or array_like
        The matrix. Arrays are symmetrized from their lower triangle.
    tol : float
        Sweeping stops once the off-diagonal Frobenius norm is at most
        ``tol * ||m||_F``.
    max_sweeps : int
        Sweep budget; exceeding it raises :class:`ConvergenceError`.
    """
    if not 0 < tol < 1:
        raise DomainError(f"tol must lie in (0, 1), got {tol!r}")
    if not isinstance(m, SymmetricMatrix):
        m = SymmetricMatrix.from_dense(m)
    n = m.n
    if n == 0:
        return SpectrumResult(np.zeros(0), 0, 0, 0.0)
    a = m.to_dense()
    target = tol * m.frobenius_norm()
    rounds = _round_robin(n)

    off = _off_norm(a)
    sweeps = 0
    while off > target:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})",
                off, sweeps)
        for p, q in rounds:
            _rotate(a, p, q)
        sweeps += 1
        off = _off_norm(a)

    return SpectrumResult(np.sort(np.diag(a)), n, sweeps, off)


def spectrum(n: int, rp: ReducedParams, n_levels: int, tol: float = DEFAULT_TOL,
             max_sweeps: int = DEFAULT_MAX_SWEEPS) -> SpectrumResult:
    """Lowest ``n_levels`` eigenvalues of the ``n``-dimensional truncated Hamiltonian.

    The even and odd parity blocks are diagonalized separately and merged.
    ``iterations`` is the larger of the two blocks' sweep counts and
    ``off_diag_norm`` the combined final off-diagonal norm.
    """
    if int(n_levels) != n_levels or not 1 <= n_levels <= n:
        raise DomainError(f"n_levels must lie in [1, n={n}], got {n_levels!r}")
    warnings = ()
    if n < 4 * n_levels:
        warnings = (f"matrix size {n} is below the recommended 4 * n_levels = {4 * n_levels}",)
    blocks = split_parity(build_matrix(n, rp))
    even = eigenvalues_symmetric(blocks.even, tol, max_sweeps)
    odd = eigenvalues_symmetric(blocks.odd, tol, max_sweeps)
    values = np.sort(np.concatenate([even.eigenvalues, odd.eigenvalues]))
    return SpectrumResult(
        eigenvalues=values[: int(n_levels)],
        n=n,
        iterations=max(even.iterations, odd.iterations),
        off_diag_norm=math.hypot(even.off_diag_norm, odd.off_diag_norm),
        warnings=warnings,
    )
