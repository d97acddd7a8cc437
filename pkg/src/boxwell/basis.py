"""Parity basis of the box ``[-a, a]`` and a Gauss-Legendre quadrature oracle.

The basis functions are

    phi_{2k}(x)   = cos((2k+1) pi x / 2a) / sqrt(a)
    phi_{2k+1}(x) = sin((k+1) pi x / a) / sqrt(a)

so ``phi_r`` has wavenumber ``(r+1) pi / 2a`` and vanishes at ``x = +-a``.
The quadrature routines here are deliberately independent of the closed-form
matrix elements in :mod:`boxwell.hamiltonian`; they exist to check them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ResolutionError

__all__ = [
    "QuadratureRule",
    "wavenumber",
    "basis_eval",
    "overlap_analytic",
    "gauss_legendre",
    "quadrature_overlap",
    "quadrature_x4_element",
    "orthonormality_defect",
    "required_points",
]


def _check_index(r) -> int:
    if isinstance(r, bool) or int(r) != r or r < 0:
        raise DomainError(f"basis index must be a non-negative integer, got {r!r}")
    return int(r)


def wavenumber(r: int, a: float = 1.0) -> float:
    return (_check_index(r) + 1) * math.pi / (2.0 * a)


def basis_eval(r: int, x, a: float = 1.0):
    """Evaluate ``phi_r`` at ``x`` (scalar or array) on the box of half-width ``a``."""
    r = _check_index(r)
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > a):
        raise DomainError(f"x must lie in [-{a}, {a}]")
    norm = 1.0 / math.sqrt(a)
    # phase in half-turns, reduced mod 2 before scaling by pi so that the
    # boundary x = +-a lands on an exact multiple of 1/2
    t = xa / a
    if r % 2 == 0:
        out = norm * np.cos(math.pi * np.remainder(0.5 * (r + 1) * t, 2.0))
    else:
        out = norm * np.sin(math.pi * np.remainder((r + 1) // 2 * t, 2.0))
    return float(out) if out.ndim == 0 else out


def overlap_analytic(alpha: float, beta: float, a: float, kind: str = "cosine") -> float:
    """Closed-form ``int_{-a}^{a} f(alpha x) f(beta x) dx`` for ``f`` = cos or sin.

    The ``alpha == beta`` case is an explicit branch rather than a guarded
    denominator.
    """
    if not (alpha > 0 and beta > 0):
        raise DomainError("wavenumbers must be positive")
    if kind not in ("cosine", "sine"):
        raise ValueError(f"kind must be 'cosine' or 'sine', got {kind!r}")
    sign = 1.0 if kind == "cosine" else -1.0
    if alpha == beta:
        return a + sign * math.sin(2.0 * alpha * a) / (2.0 * alpha)
    return (math.sin((alpha - beta) * a) / (alpha - beta)
            + sign * math.sin((alpha + beta) * a) / (alpha + beta))


@lru_cache(maxsize=64)
def _legendre_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    # Newton iteration on P_n from the Tricomi-style initial guess.
    i = np.arange(1, n + 1)
    x = np.cos(math.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) <= 1e-15:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # ascending nodes; symmetrize to kill rounding asymmetry
    x = x[::-1]
    w = w[::-1]
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on ``[-half_width, half_width]``."""

    n_points: int
    half_width: float
    nodes: np.ndarray
    weights: np.ndarray


def gauss_legendre(n_points: int, half_width: float = 1.0) -> QuadratureRule:
    if int(n_points) != n_points or n_points < 1:
        raise ValueError(f"n_points must be a positive integer, got {n_points!r}")
    if not half_width > 0:
        raise DomainError("half_width must be positive")
    x, w = _legendre_nodes(int(n_points))
    return QuadratureRule(int(n_points), float(half_width), half_width * x, half_width * w)


def required_points(r: int, s: int) -> int:
    """Minimum rule size accepted by the x**4 oracle for indices ``r``, ``s``."""
    return 2 * (max(r, s) + 2)


def _check_rule(rule: QuadratureRule, a: float, r: int, s: int):
    if rule.half_width != a:
        raise DomainError(f"rule is built on half-width {rule.half_width}, not {a}")
    need = required_points(r, s)
    if rule.n_points < need:
        raise ResolutionError(
            f"{rule.n_points}-point rule cannot resolve indices ({r}, {s}); need >= {need}")


def quadrature_overlap(alpha: float, beta: float, a: float, kind: str, rule: QuadratureRule) -> float:
    """Quadrature counterpart of :func:`overlap_analytic`."""
    f = np.cos if kind == "cosine" else np.sin
    if rule.half_width != a:
        raise DomainError(f"rule is built on half-width {rule.half_width}, not {a}")
    x = rule.nodes
    return float(np.dot(rule.weights, f(alpha * x) * f(beta * x)))


def quadrature_x4_element(r: int, s: int, a: float, rule: QuadratureRule) -> float:
    """``int_{-a}^{a} phi_r(x) x**4 phi_s(x) dx`` by Gauss-Legendre quadrature.

    The pair is ordered before evaluation so the result is bitwise symmetric
    in ``(r, s)``.
    """
    r, s = sorted((_check_index(r), _check_index(s)))
    _check_rule(rule, a, r, s)
    x = rule.nodes
    x2 = x * x
    integrand = basis_eval(r, x, a) * (x2 * x2) * basis_eval(s, x, a)
    return float(np.dot(rule.weights, integrand))


def orthonormality_defect(N: int, a: float, rule: QuadratureRule) -> float:
    """Largest ``|<phi_r, phi_s> - delta_rs|`` over ``r, s < N`` by quadrature."""
    if N < 1:
        raise DomainError("N must be at least 1")
    _check_rule(rule, a, N - 1, N - 1)
    phi = np.array([basis_eval(r, rule.nodes, a) for r in range(N)])
    gram = (phi * rule.weights) @ phi.T
    return float(np.max(np.abs(gram - np.eye(N))))
