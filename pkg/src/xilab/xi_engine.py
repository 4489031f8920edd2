"""The completed zeta function xi(s) and the objects built on it.

xi(s) = (1/2) s (s-1) pi^(-s/2) Gamma(s/2) zeta(s) is entire. It is evaluated
with the large/small factors pi^(-s/2) Gamma(s/2) combined in log space and
the removable singularities handled explicitly:

* near s = 1 the zeta pole is cancelled analytically through the eta form,
* near s = 0 and near the trivial zeros s = -2, -4, ... the value is taken
  from xi(1 - s).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AccuracyError, DomainError
from .specfun import (
    DEFAULT_CONFIG,
    EULER_GAMMA,
    SpecFunConfig,
    _as_complex,
    complex_zeta,
    dirichlet_eta,
    log_gamma,
    zeta_via_eta,
)

LN_PI = math.log(math.pi)
LN2 = math.log(2.0)
_NEAR = 0.1


def _gamma_factor(z: complex) -> complex:
    # pi^(-z/2) Gamma(z/2)
    return cmath.exp(-0.5 * z * LN_PI + log_gamma(0.5 * z))


def _near_even_nonpositive(z: complex) -> bool:
    if z.real > 0.5:
        return False
    nearest = 2.0 * round(0.5 * z.real)
    return nearest <= 0.0 and abs(z - nearest) < _NEAR


def _pole_cancelled_zeta(z: complex) -> complex:
    """(s - 1) zeta(s) near s = 1, free of the 0 * inf cancellation."""
    w = (1.0 - z) * LN2
    # expm1(w) / w as a power series
    term = 1.0 + 0j
    ratio = term
    for k in range(2, 22):
        term = term * w / k
        ratio += term
    # (s - 1) / (1 - 2^(1-s)) = 1 / (ln 2 * expm1(w) / w)
    return dirichlet_eta(z) / (LN2 * ratio)


def xi(s, config: SpecFunConfig = DEFAULT_CONFIG) -> complex:
    """Riemann xi(s) for complex s."""
    z = _as_complex(s)
    if abs(z - 1.0) < _NEAR:
        return 0.5 * z * _pole_cancelled_zeta(z) * _gamma_factor(z)
    if z.real < 0.5 and _near_even_nonpositive(z):
        return xi(1.0 - z, config)
    return 0.5 * z * (z - 1.0) * complex_zeta(z, config) * _gamma_factor(z)


def xi_eta_route(s) -> complex:
    """xi(s) with zeta taken from the alternating eta series (Re s >= 0)."""
    z = _as_complex(s)
    if abs(z - 1.0) < _NEAR:
        return 0.5 * z * _pole_cancelled_zeta(z) * _gamma_factor(z)
    if z.real < 0.0:
        raise DomainError("eta route needs Re s >= 0")
    if abs(z) < _NEAR:
        return xi_eta_route(1.0 - z)
    return 0.5 * z * (z - 1.0) * zeta_via_eta(z) * _gamma_factor(z)


def big_xi(t: float, config: SpecFunConfig = DEFAULT_CONFIG, method: str = "em") -> float:
    """Xi(t) = xi(1/2 + it), real for real t.

    ``method`` selects the zeta route: ``"em"`` (Euler-Maclaurin) or ``"eta"``.
    The discarded imaginary part must stay below 1e-10 (1 + |Xi|).
    """
    s = complex(0.5, t)
    if method == "em":
        v = xi(s, config)
    elif method == "eta":
        v = xi_eta_route(s)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not abs(v.imag) <= 1e-10 * (1.0 + abs(v.real)):
        raise AccuracyError(f"Xi({t}) has imaginary residue {v.imag:.3e}")
    return v.real


def zero_free_factor(s, config: SpecFunConfig = DEFAULT_CONFIG) -> complex:
    """(1/2) s (s-1) pi^(-s/2) Gamma(s/2), the part of xi that never vanishes off 0, 1."""
    z = _as_complex(s)
    return 0.5 * z * (z - 1.0) * _gamma_factor(z)


# --- Hadamard product -------------------------------------------------------


def b0_closed_form() -> float:
    """The logarithmic derivative xi'(0)/xi(0) in closed form: -gamma/2 - 1 + ln(4 pi)/2."""
    return -0.5 * EULER_GAMMA - 1.0 + 0.5 * math.log(4.0 * math.pi)


def stated_b0() -> float:
    """The audited formula -gamma/2 - 1 - ln(4 pi)/2 for the product's linear exponent."""
    return -0.5 * EULER_GAMMA - 1.0 - 0.5 * math.log(4.0 * math.pi)


def estimate_b0(h: float = 1e-3, config: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """Numerical d/ds ln xi(s) at s = 0.

    Five-point central difference at steps h and h/2, combined by one
    Richardson step (the leading error term is O(h^4)).
    """

    def f(x):
        return math.log(xi(x, config).real)

    def d5(step):
        return (-f(2 * step) + 8 * f(step) - 8 * f(-step) + f(-2 * step)) / (12.0 * step)

    coarse = d5(h)
    fine = d5(0.5 * h)
    return fine + (fine - coarse) / 15.0


@dataclass(frozen=True)
class HadamardTruncation:
    zero_count: int
    b0: float
    pairing: bool = True

    def __post_init__(self):
        if self.zero_count < 1:
            raise ValueError("zero_count must be >= 1")


def _ordinates(zeros: Iterable) -> list:
    return [float(getattr(z, "t", z)) for z in zeros]


def hadamard_partial(s, zeros: Sequence, trunc: HadamardTruncation) -> complex:
    """(1/2) e^(b0 s) prod_{n <= N} (1 - s/rho)(1 - s/conj rho) e^(s/rho + s/conj rho).

    ``zeros`` holds critical-line ordinates t_n (floats or objects with ``.t``);
    rho_n = 1/2 + i t_n. With pairing on, each conjugate pair collapses to the
    real-coefficient factor (1 + s(s-1)/|rho|^2) e^(s/|rho|^2).
    """
    z = _as_complex(s)
    ts = _ordinates(zeros)
    if not ts:
        raise DomainError("empty zero list")
    if trunc.zero_count > len(ts):
        raise DomainError(f"zero_count {trunc.zero_count} exceeds table length {len(ts)}")
    prod = 1.0 + 0j
    expo = trunc.b0 * z
    if trunc.pairing:
        lam = z * (z - 1.0)
        for t in ts[: trunc.zero_count]:
            m = 0.25 + t * t
            prod *= 1.0 + lam / m
            expo += z / m
    else:
        for t in ts[: trunc.zero_count]:
            for rho in (complex(0.5, t), complex(0.5, -t)):
                q = z / rho
                prod *= 1.0 - q
                expo += q
    return 0.5 * cmath.exp(expo) * prod


# --- chi ----------------------------------------------------------------------


@dataclass(frozen=True)
class ChiConstants:
    alpha: float
    beta: float
    A: float
    B: float

    @classmethod
    def stated(cls) -> "ChiConstants":
        """alpha = ln 2 - pi, beta = pi + gamma/2 + 1 - ln(4 pi)/2, A = -pi, B = pi."""
        return cls(
            alpha=LN2 - math.pi,
            beta=math.pi + 0.5 * EULER_GAMMA + 1.0 - 0.5 * math.log(4.0 * math.pi),
            A=-math.pi,
            B=math.pi,
        )

    @classmethod
    def from_hadamard(cls, b0: float, A: float = -math.pi, B: float = math.pi) -> "ChiConstants":
        """Constants implied by dividing e^(A+Bs) prod(...) by (1/2) e^(b0 s) prod(...)."""
        return cls(alpha=LN2 + A, beta=B - b0, A=A, B=B)

    def consistency(self, b0: float) -> tuple:
        """Residuals (alpha - (ln 2 + A), beta - (B - b0))."""
        return self.alpha - (LN2 + self.A), self.beta - (self.B - b0)


def chi_direct(s_real: float) -> float:
    """e^(pi (s-1)) for s > 1 and e^(-pi s) for s < 0; undefined on [0, 1]."""
    s = float(s_real)
    if s > 1.0:
        return math.exp(math.pi * (s - 1.0))
    if s < 0.0:
        return math.exp(-math.pi * s)
    raise DomainError(f"chi is left unspecified on [0, 1] (s = {s:g})")


def chi_via_ratio(s, constants: ChiConstants | None = None, config: SpecFunConfig = DEFAULT_CONFIG) -> complex:
    """xi(s) e^(alpha + beta s)."""
    c = constants if constants is not None else ChiConstants.stated()
    z = _as_complex(s)
    return xi(z, config) * cmath.exp(c.alpha + c.beta * z)


def chi_lambda_roundtrip(s_real: float) -> float:
    """lambda = x/pi + x^2/pi^2 with x = |ln chi| = pi (s - 1); equals s(s-1)."""
    s = float(s_real)
    if not s >= 1.0:
        raise DomainError("chi_lambda_roundtrip needs s >= 1")
    x = math.pi * (s - 1.0)
    return x / math.pi + x * x / (math.pi * math.pi)
