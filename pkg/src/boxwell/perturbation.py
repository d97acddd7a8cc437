"""Rayleigh-Schroedinger energies of the box quartic oscillator through second order.

All energies are in units of epsilon (the free-box ground state), with
reduced coupling ``g``. With ``n = r + 1`` and ``x = 1 / (pi n)**2``:

    e0 = n**2
    e1 = (g/5) (1 - 20 x + 120 x**2)
    e2 = g**2 (pi**2/8) (32/225 x - 1184/35 x**2 + 10048/5 x**3 - 44928 x**4 + 278784 x**5)

The physical prefactor ``m a**10 lambda**2 / hbar**2`` of the second-order
term equals ``g**2 epsilon pi**2 / 8``, which is where the ``pi**2/8`` comes
from. :func:`e2_series` sums ``V_rs**2 / (e_r - e_s)`` over the same-parity
levels directly and is the independent check on the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError
from .hamiltonian import coupling_constants, potential_elements
from .params import ReducedParams

__all__ = [
    "E2_COEFFICIENTS",
    "E2_ODD_COEFFICIENTS",
    "PerturbationBreakdown",
    "SeriesResult",
    "DEFAULT_S_MAX",
    "e0",
    "e1",
    "e2_closed",
    "e2_even_closed",
    "e2_odd_closed",
    "v_offdiag",
    "energy_denominator",
    "inverse_energy_denominator",
    "e2_series",
    "energy_rs2",
]

# Magnitudes of the coefficients of x, x**2, ..., x**5; signs alternate, starting +.
E2_COEFFICIENTS: tuple[Fraction, ...] = (
    Fraction(32, 225),
    Fraction(1184, 35),
    Fraction(10048, 5),
    Fraction(44928),
    Fraction(278784),
)
# Same polynomial written for odd levels 2k+1 in the variable 1/(pi (k+1))**2.
E2_ODD_COEFFICIENTS: tuple[Fraction, ...] = (
    Fraction(8, 225),
    Fraction(74, 35),
    Fraction(157, 5),
    Fraction(351, 2),
    Fraction(1089, 4),
)

DEFAULT_S_MAX = 2000

_PI2 = math.pi**2


def _check_level(r) -> int:
    if isinstance(r, bool) or int(r) != r or r < 0:
        raise DomainError(f"quantum number must be a non-negative integer, got {r!r}")
    return int(r)


def e0(r: int) -> float:
    r = _check_level(r)
    return float((r + 1) ** 2)


def e1(r: int, g: float) -> float:
    n = float(_check_level(r) + 1)
    inv = 1.0 / (_PI2 * n * n)
    return (g / 5.0) * (1.0 - 20.0 * inv + 120.0 * inv * inv)


def _second_order_poly(n: int, g: float, coefficients: Sequence) -> float:
    # powers by repeated multiplication so that n -> 2n rescales every term
    # by an exact power of two (the odd-family identity is then bitwise)
    x = 1.0 / (_PI2 * n * n)
    terms = []
    power = 1.0
    for k, c in enumerate(coefficients):
        power = power * x
        sign = 1.0 if k % 2 == 0 else -1.0
        terms.append(sign * float(c) * power)
    # + 0.0 turns the -0.0 from g = 0 into +0.0
    return g * g * (_PI2 / 8.0) * math.fsum(terms) + 0.0


def e2_closed(r: int, g: float, coefficients: Sequence | None = None) -> float:
    """Closed-form second-order correction for level ``r``.

    ``coefficients`` replaces :data:`E2_COEFFICIENTS`; it exists so tests can
    check that a mutated coefficient is detected.
    """
    r = _check_level(r)
    return _second_order_poly(r + 1, g, E2_COEFFICIENTS if coefficients is None else coefficients)


def e2_even_closed(k: int, g: float) -> float:
    """Second-order correction of the even level ``2k``."""
    k = _check_level(k)
    return _second_order_poly(2 * k + 1, g, E2_COEFFICIENTS)


def e2_odd_closed(k: int, g: float) -> float:
    """Second-order correction of the odd level ``2k+1``, in its native ``(k+1)`` form."""
    k = _check_level(k)
    return _second_order_poly(k + 1, g, E2_ODD_COEFFICIENTS)


def v_offdiag(r: int, s: int, g: float) -> float:
    """Off-diagonal potential element between same-parity levels ``r != s``."""
    r, s = _check_level(r), _check_level(s)
    if r == s or (r - s) % 2:
        raise DomainError(f"v_offdiag needs distinct same-parity indices, got ({r}, {s})")
    return float(potential_elements(r, s, g))


def energy_denominator(r: int, s: int) -> float:
    """``e0(r) - e0(s) = (r+s+2)(r-s)``."""
    r, s = _check_level(r), _check_level(s)
    if r == s:
        raise DomainError("energy denominator is undefined for r == s")
    return float((r + s + 2) * (r - s))


def inverse_energy_denominator(r: int, s: int) -> float:
    """Partial-fraction form ``[1/(r-s) + 1/(r+s+2)] / (2(r+1))``."""
    r, s = _check_level(r), _check_level(s)
    if r == s:
        raise DomainError("energy denominator is undefined for r == s")
    return (1.0 / (r - s) + 1.0 / (r + s + 2)) / (2.0 * (r + 1))


@dataclass(frozen=True)
class SeriesResult:
    """Truncated second-order sum.

    ``value = lower_sum + upper_sum`` where the lower sum runs over ``s < r``
    (all terms >= 0) and the upper sum over ``r < s <= s_max`` (all terms <= 0).
    ``tail_bound`` bounds the magnitude of the omitted ``s > s_max`` terms.
    """

    value: float
    terms_used: int
    tail_bound: float
    lower_sum: float
    upper_sum: float


def _tail_bound(r: int, g: float, first_omitted: int) -> float:
    # With u = s - r and S = s + r + 2 >= u:
    #   V_rs = sigma * A * (c1 - c2 (1/u**2 + 1/S**2)),  A = 1/u**2 - 1/S**2
    #   A = (S - u)(S + u) / (u S)**2 <= 4 (r+1) / (u**2 S)      since S + u <= 2S
    #   |c1 - c2 (...)| <= c1 + 2 c2 / u**2                        (c1, c2 >= 0)
    #   |V_rs**2 / e_rs| <= 16 (r+1)**2 (c1 + 2 c2/u**2)**2 / (u**5 S**3) <= K / u**8
    # with K fixed at the first omitted u (the bracket decreases in u). The
    # omitted u run over u1, u1+2, ..., and for decreasing f
    #   sum_{j>=0} f(u1 + 2j) <= f(u1) + (1/2) int_{u1}^inf f,
    # giving K (1/u1**8 + 1/(14 u1**7)), an O(1/s_max**7) bound.
    c1, c2 = coupling_constants(g)
    u1 = float(first_omitted - r)
    k = 16.0 * (r + 1) ** 2 * (c1 + 2.0 * c2 / (u1 * u1)) ** 2
    return k * (1.0 / u1**8 + 1.0 / (14.0 * u1**7))


def e2_series(r: int, g: float, s_max: int = DEFAULT_S_MAX) -> SeriesResult:
    """Second-order correction by direct summation over same-parity ``s <= s_max``.

    Terms are evaluated from the matrix elements and energy denominators and
    accumulated in ascending ``s`` with correctly rounded summation
    (:func:`math.fsum`), separately for ``s < r`` and ``s > r``.
    """
    r = _check_level(r)
    if int(s_max) != s_max or s_max < r + 2:
        raise DomainError(f"s_max must be at least r + 2 = {r + 2}, got {s_max!r}")
    s_max = int(s_max)
    s = np.arange(r % 2, s_max + 1, 2, dtype=np.int64)
    s = s[s != r]
    v = potential_elements(r, s, g)
    denom = ((r + s + 2) * (r - s)).astype(float)
    terms = v * v / denom
    lower = math.fsum(terms[s < r])
    upper = math.fsum(terms[s > r])
    last = int(s[-1])
    return SeriesResult(
        value=lower + upper,
        terms_used=int(s.size),
        tail_bound=_tail_bound(r, g, last + 2),
        lower_sum=lower,
        upper_sum=upper,
    )


@dataclass(frozen=True)
class PerturbationBreakdown:
    r: int
    e0: float
    e1: float
    e2: float
    total: float
    e2_source: str


def energy_rs2(r: int, rp: ReducedParams, e2_source: str = "closed",
               s_max: int = DEFAULT_S_MAX) -> PerturbationBreakdown:
    """Energy of level ``r`` through second order, in units of epsilon."""
    r = _check_level(r)
    if e2_source == "closed":
        second = e2_closed(r, rp.g)
    elif e2_source == "series":
        second = e2_series(r, rp.g, s_max).value
    else:
        raise ValueError(f"e2_source must be 'closed' or 'series', got {e2_source!r}")
    zeroth = e0(r)
    first = e1(r, rp.g)
    return PerturbationBreakdown(r, zeroth, first, second, zeroth + first + second, e2_source)
