"""Numerical audit kit for the Riemann xi function and inverse-square scattering."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AccuracyError,
    DivergenceError,
    DomainError,
    PoleError,
    SolverError,
    UsageError,
    XilabError,
    ZeroTableError,
)
from .kernels import BACKEND  # noqa: E402
from .specfun import SpecFunConfig, bessel_k, complex_gamma, complex_zeta, hankel1  # noqa: E402
from .xi_engine import big_xi, estimate_b0, hadamard_partial, xi  # noqa: E402
from .zero_scan import CriticalZero, ScanConfig, find_zeros  # noqa: E402

__all__ = [
    "AccuracyError",
    "BACKEND",
    "CriticalZero",
    "DivergenceError",
    "DomainError",
    "PoleError",
    "ScanConfig",
    "SolverError",
    "SpecFunConfig",
    "UsageError",
    "XilabError",
    "ZeroTableError",
    "__version__",
    "bessel_k",
    "big_xi",
    "complex_gamma",
    "complex_zeta",
    "estimate_b0",
    "find_zeros",
    "hadamard_partial",
    "hankel1",
    "xi",
]
