"""Double-precision special functions: Gamma, zeta, eta, Bessel K, J and H1.

Complex numbers are carried as the builtin ``complex``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import AccuracyError, DomainError, PoleError
from .quadrature import exp_sinh

EULER_GAMMA = 0.57721566490153286
LN_SQRT_2PI = 0.91893853320467274178
SQRT_2PI = 2.5066282746310005024

# Godfrey's g = 607/128 Lanczos set
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)

# asymptotic expansion is used for J_mu(x) once x >= _ASYM_X0 + mu^2
_ASYM_X0 = 25.0


@dataclass(frozen=True)
class SpecFunConfig:
    zeta_terms_min: int = 30
    zeta_bernoulli_order: int = 12
    quad_abs_tol: float = 1e-12
    quad_max_levels: int = 10

    def __post_init__(self):
        if self.zeta_terms_min < 10:
            raise ValueError("zeta_terms_min must be >= 10")
        order = self.zeta_bernoulli_order
        if order % 2 or not 4 <= order <= 24:
            raise ValueError("zeta_bernoulli_order must be even and in [4, 24]")
        if not self.quad_abs_tol > 0:
            raise ValueError("quad_abs_tol must be positive")
        if self.quad_max_levels < 1:
            raise ValueError("quad_max_levels must be >= 1")


DEFAULT_CONFIG = SpecFunConfig()


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2 convention)."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * b[j]
        b.append(-acc / (m + 1))
    return b[n]


@lru_cache(maxsize=None)
def _em_coefficients(order: int) -> tuple:
    # B_{2k} / (2k)! for k = 1 .. order/2
    return tuple(float(bernoulli(2 * k) / math.factorial(2 * k)) for k in range(1, order // 2 + 1))


def _as_complex(s) -> complex:
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    return z


def _check_gamma_pole(z: complex) -> None:
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"Gamma has a pole at s = {z.real:g}", z)


def _lanczos_sum(x: complex) -> complex:
    acc = complex(_LANCZOS_C[0])
    for k in range(len(_LANCZOS_C) - 1, 0, -1):
        acc += _LANCZOS_C[k] / (x + k)
    return acc


def complex_gamma(s) -> complex:
    """Gamma(s) for complex s; reflection is used for Re s < 1/2."""
    z = _as_complex(s)
    _check_gamma_pole(z)
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * complex_gamma(1.0 - z))
    x = z - 1.0
    t = x + _LANCZOS_G + 0.5
    # split the power to delay overflow for large Re z
    half = t ** (0.5 * (x + 0.5))
    return SQRT_2PI * _lanczos_sum(x) * (half * cmath.exp(-t)) * half


def log_gamma(s) -> complex:
    """log Gamma(s), analytic off the negative real axis.

    Agrees with the real log-Gamma on the positive axis and is continuous
    along vertical lines. For Re s < 1/2 the argument is shifted right by the
    recurrence rather than reflected, which keeps the branch consistent.
    """
    z = _as_complex(s)
    _check_gamma_pole(z)
    if z.real < 0.5:
        m = math.ceil(0.5 - z.real)
        acc = log_gamma(z + m)
        for j in range(m):
            acc -= cmath.log(z + j)
        return acc
    x = z - 1.0
    t = x + _LANCZOS_G + 0.5
    return LN_SQRT_2PI + (x + 0.5) * cmath.log(t) - t + cmath.log(_lanczos_sum(x))


def zeta_terms(s: complex, config: SpecFunConfig = DEFAULT_CONFIG) -> int:
    return max(config.zeta_terms_min, math.ceil(2.0 * abs(s.imag)) + 20)


def complex_zeta(s, config: SpecFunConfig = DEFAULT_CONFIG) -> complex:
    """Riemann zeta by Euler-Maclaurin summation.

    Uses N = max(zeta_terms_min, ceil(2|t|) + 20) direct terms and Bernoulli
    corrections through B_{order}. Validated for -2 <= Re s <= 3, |Im s| <= 100
    and usable (with growing cost) further up the strip.
    """
    z = _as_complex(s)
    if z == 1.0:
        raise PoleError("zeta has a pole at s = 1", z)
    n = zeta_terms(z, config)
    re, im = kernels.zeta_em(z.real, z.imag, n, _em_coefficients(config.zeta_bernoulli_order))
    return complex(re, im)


def borwein_terms(s: complex) -> int:
    # (3 + sqrt 8)^-n must beat exp(pi |t| / 2) by ~17 digits
    return 25 + math.ceil((0.5 * math.pi * abs(s.imag) + 15.0) / 1.7627)


def dirichlet_eta(s) -> complex:
    """Alternating zeta sum(-1)^(n-1) n^-s via Borwein's acceleration."""
    z = _as_complex(s)
    if z.real < 0.0:
        raise DomainError("dirichlet_eta is implemented for Re s >= 0")
    n = borwein_terms(z)
    if n > 400:
        raise DomainError(f"|Im s| = {abs(z.imag):g} too large for the eta series")
    re, im = kernels.eta_borwein(z.real, z.imag, n)
    return complex(re, im)


def one_minus_two_pow(s: complex) -> complex:
    """1 - 2^(1 - s), accurate near s = 1."""
    w = (1.0 - s) * math.log(2.0)
    return -_expm1(w)


def _expm1(w: complex) -> complex:
    if abs(w) < 0.1:
        term = w
        acc = w
        for k in range(2, 20):
            term = term * w / k
            acc += term
        return acc
    return cmath.exp(w) - 1.0


def zeta_via_eta(s) -> complex:
    """zeta(s) = eta(s) / (1 - 2^(1-s)); an independent route to ``complex_zeta``."""
    z = _as_complex(s)
    if z == 1.0:
        raise PoleError("zeta has a pole at s = 1", z)
    return dirichlet_eta(z) / one_minus_two_pow(z)


def euler_gamma_const() -> float:
    return EULER_GAMMA


def bessel_k(nu: float, x: float, config: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """Modified Bessel function K_nu(x) for 0 < nu <= 5, x > 0.

    Trapezoidal sums of the cosh representation, refined by step halving.
    """
    if not (nu > 0.0 and x > 0.0) or not (math.isfinite(nu) and math.isfinite(x)):
        raise DomainError(f"bessel_k needs nu > 0 and x > 0, got nu={nu!r}, x={x!r}")
    if nu > 5.0:
        raise DomainError("bessel_k is validated for nu <= 5")
    scaled, _, ok = kernels.bessel_k_scaled(float(nu), float(x), 0.5, 1e-14, config.quad_max_levels)
    if not ok:
        raise AccuracyError(f"K_{nu}({x}) did not converge in {config.quad_max_levels} levels")
    return math.exp(-x) * scaled


@lru_cache(maxsize=64)
def _legendre(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    theta = 0.5 * math.pi * (nodes + 1.0)
    return theta, np.sin(theta), 0.5 * math.pi * weights


def _bessel_j_asymptotic(mu: float, x: float) -> float:
    big_mu = 4.0 * mu * mu
    term = 1.0 + 0j
    acc = term
    prev = math.inf
    for k in range(1, 200):
        term = term * 1j * (big_mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        mag = abs(term)
        if mag > prev:
            break
        acc += term
        if mag < 1e-17 * abs(acc):
            break
        prev = mag
    omega = x - 0.5 * mu * math.pi - 0.25 * math.pi
    h1 = math.sqrt(2.0 / (math.pi * x)) * cmath.exp(1j * omega) * acc
    return h1.real


def _bessel_j_schlafli(mu: float, x: float) -> float:
    n = 48 + int(1.5 * (x + abs(mu)))
    theta, sin_theta, w = _legendre(n)
    first = float(np.dot(w, np.cos(mu * theta - x * sin_theta))) / math.pi
    sin_mu_pi = math.sin(mu * math.pi)
    if sin_mu_pi == 0.0:
        return first

    def tail(t):
        with np.errstate(over="ignore"):
            return np.exp(-x * np.sinh(t) - mu * t)

    # exp-sinh maps [0, inf) itself; shift by 0 keeps t = 0 exact
    second = exp_sinh(tail, 0.0, abs_tol=1e-16, max_levels=7).value
    return first - sin_mu_pi / math.pi * second


def bessel_j(mu: float, x: float) -> float:
    """Bessel J_mu(x) for real order mu (either sign) and x > 0."""
    if not x > 0.0:
        raise DomainError("bessel_j needs x > 0")
    if x >= _ASYM_X0 + mu * mu:
        return _bessel_j_asymptotic(mu, x)
    return _bessel_j_schlafli(mu, x)


def bessel_y(nu: float, x: float) -> float:
    """Y_nu(x) = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi), non-integer nu only."""
    if nu == math.floor(nu):
        raise DomainError(
            f"integer order nu={nu:g} is not supported; perturb nu off the integer"
        )
    return (bessel_j(nu, x) * math.cos(nu * math.pi) - bessel_j(-nu, x)) / math.sin(nu * math.pi)


def hankel1(nu: float, x: float) -> complex:
    """Hankel function H1_nu(x) = J_nu(x) + i Y_nu(x) for non-integer nu > 0."""
    if not (nu > 0.0 and x > 0.0):
        raise DomainError(f"hankel1 needs nu > 0 and x > 0, got nu={nu!r}, x={x!r}")
    if nu == math.floor(nu):
        raise DomainError(
            f"integer order nu={nu:g} is not supported; perturb nu off the integer"
        )
    j_pos = bessel_j(nu, x)
    j_neg = bessel_j(-nu, x)
    c = math.cos(nu * math.pi)
    s = math.sin(nu * math.pi)
    return complex(j_pos, (j_pos * c - j_neg) / s)
