"""Quantum harmonic oscillator around a spiral dislocation (hbar = c = 1).

The defect is described by a fixed background metric; separating the
wave equation in it yields closed-form spectra and wavefunctions, a
hard-wall variant, and an independent shooting solver used to verify
both.  See the README for the layout and the ``spiralosc`` CLI for the
table/verification front end.
"""

from .errors import BracketError, ConvergenceError, DomainError, NumericsError
from .geometry import (
    DislocationParams,
    LaplacianCoefficients,
    MetricAtPoint,
    laplacian_coefficients,
    metric_at,
)
from .hard_wall import HardWallConfig, approx_energy, boundary_value, exact_energy
from .kummer import (
    HypergeomArgs,
    Regime,
    gamma_fn,
    kummer_1f1,
    kummer_1f1_asymptotic,
    kummer_1f1_cosine,
    kummer_1f1_descent,
    kummer_1f1_poly,
)
from .oscillator import (
    QuantumNumbers,
    RadialState,
    bound_state,
    energy_level,
    full_wavefunction,
    hamiltonian_residual,
    lambda_of_energy,
    normalize,
    radial_R,
    radial_f,
    x_of_r,
)
from .shooting import ShootingConfig, ShotResult, find_eigenvalue, shoot
from .verify import SUITES, CheckResult, run_suites

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "CheckResult",
    "ConvergenceError",
    "DislocationParams",
    "DomainError",
    "HardWallConfig",
    "HypergeomArgs",
    "LaplacianCoefficients",
    "MetricAtPoint",
    "NumericsError",
    "QuantumNumbers",
    "RadialState",
    "Regime",
    "ShootingConfig",
    "ShotResult",
    "SUITES",
    "approx_energy",
    "bound_state",
    "boundary_value",
    "energy_level",
    "exact_energy",
    "find_eigenvalue",
    "full_wavefunction",
    "gamma_fn",
    "hamiltonian_residual",
    "kummer_1f1",
    "kummer_1f1_asymptotic",
    "kummer_1f1_cosine",
    "kummer_1f1_descent",
    "kummer_1f1_poly",
    "lambda_of_energy",
    "laplacian_coefficients",
    "metric_at",
    "normalize",
    "radial_R",
    "radial_f",
    "run_suites",
    "shoot",
    "x_of_r",
    "__version__",
]
