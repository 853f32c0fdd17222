"""Numerics for the Tamm-Dancoff q-deformed oscillator.

Spectrum, accidental degeneracies, truncated Fock-space matrices and the
two-mode q-deformed su(2) + u(1) algebra.
"""

from .core import (
    DeformationParameter,
    Regime,
    Spectrum,
    energy,
    fibonacci_coefficients,
    fibonacci_local_ratio,
    fibonacci_residual,
    log_energy,
    q_bracket,
    q_factorial,
    qp_bracket,
    spectrum,
    truncation_index,
)
from .degeneracy import (
    DegeneracyQuery,
    DegeneracySolution,
    ImpossibleDegeneracyError,
    q_general,
    q_nearest_neighbor,
    q_next_nearest,
    q_zero_level,
    table1,
    verify_degeneracy,
)
from .roots import ConvergenceError, RootCountError, SolverError

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DegeneracyQuery",
    "DegeneracySolution",
    "DeformationParameter",
    "ImpossibleDegeneracyError",
    "Regime",
    "RootCountError",
    "SolverError",
    "Spectrum",
    "energy",
    "fibonacci_coefficients",
    "fibonacci_local_ratio",
    "fibonacci_residual",
    "log_energy",
    "q_bracket",
    "q_factorial",
    "q_general",
    "q_nearest_neighbor",
    "q_next_nearest",
    "q_zero_level",
    "qp_bracket",
    "spectrum",
    "table1",
    "truncation_index",
    "verify_degeneracy",
]
