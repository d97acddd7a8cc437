"""Box-confined quartic oscillator: direct diagonalization and second-order
Rayleigh-Schroedinger energies, with quadrature and series oracles."""

from .errors import (BoxwellError, ConvergenceError, DomainError, InvalidParameterError,
                     ResolutionError)
from .params import PhysicalParams, ReducedParams, reduce, to_physical_energy
from .hamiltonian import SymmetricMatrix, build_matrix, h_element, split_parity, v_element
from .eigen import SpectrumResult, eigenvalues_symmetric, spectrum
from .perturbation import (PerturbationBreakdown, SeriesResult, e0, e1, e2_closed, e2_series,
                           energy_rs2)
from .analysis import EnergyTable, compare_table, residual_scaling, truncation_convergence

__version__ = "0.1.0"
