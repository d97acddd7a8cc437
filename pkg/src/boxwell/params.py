"""Physical parameters of the box-confined quartic oscillator and reduced units.

All numerics in the package run in reduced units, where energies are measured
in ``epsilon = pi**2 hbar**2 / (8 m a**2)`` (the ground-state energy of the
free box) and the quartic coupling enters only through ``g = lambda a**4 / epsilon``.
Units are the caller's business: any consistent system works.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError

__all__ = [
    "PhysicalParams",
    "ReducedParams",
    "energy_scale",
    "reduce",
    "to_physical_energy",
    "coupling_for",
]


@dataclass(frozen=True)
class PhysicalParams:
    """Mass, reduced Planck constant, box half-width ``a`` and coupling ``lambda``.

    ``coupling = 0`` is allowed and gives the free particle in a box.
    """

    mass: float = 1.0
    hbar: float = 1.0
    half_width: float = 1.0
    coupling: float = 1.0

    def __post_init__(self):
        for name in ("mass", "hbar", "half_width"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameterError(f"{name} must be a finite positive number, got {value!r}")
        if not (math.isfinite(self.coupling) and self.coupling >= 0):
            raise InvalidParameterError(f"coupling must be finite and non-negative, got {self.coupling!r}")


@dataclass(frozen=True)
class ReducedParams:
    """Energy scale ``epsilon`` and dimensionless coupling ``g``."""

    epsilon: float = math.pi**2 / 8
    g: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise InvalidParameterError(f"epsilon must be finite and positive, got {self.epsilon!r}")
        if not (math.isfinite(self.g) and self.g >= 0):
            raise InvalidParameterError(f"g must be finite and non-negative, got {self.g!r}")


def energy_scale(mass: float, hbar: float, half_width: float) -> float:
    """Ground-state energy of the free box, ``pi**2 hbar**2 / (8 m a**2)``."""
    return math.pi**2 * hbar**2 / (8.0 * mass * half_width**2)


def reduce(p: PhysicalParams) -> ReducedParams:
    eps = energy_scale(p.mass, p.hbar, p.half_width)
    return ReducedParams(epsilon=eps, g=p.coupling * p.half_width**4 / eps)


def to_physical_energy(e_reduced, p: PhysicalParams):
    """Convert a reduced energy (scalar or array) to physical units."""
    return e_reduced * energy_scale(p.mass, p.hbar, p.half_width)


def coupling_for(g: float, mass: float = 1.0, hbar: float = 1.0, half_width: float = 1.0) -> float:
    """Inverse of the ``g`` map: the physical coupling that yields reduced coupling ``g``."""
    if not (math.isfinite(g) and g >= 0):
        raise InvalidParameterError(f"g must be finite and non-negative, got {g!r}")
    return g * energy_scale(mass, hbar, half_width) / half_width**4
