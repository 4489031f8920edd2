"""S-wave scattering off V(r) = lambda / r^2 (units with 2m/hbar^2 = 1).

Analytic phase shift, radial ODE extraction of the same phase, the Jost
solution built from H1_nu, and the norm integral of r K_nu(tau r)^2.
"""

from __future__ import annotations

import cmath
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .errors import DivergenceError, DomainError, SolverError
from .quadrature import exp_sinh, tanh_sinh
from .specfun import bessel_k, hankel1

NONZERO_MARGIN = 1e-12
TSV_COLUMNS = ("lambda", "nu", "k", "delta_analytic", "delta_numeric", "s_re", "s_im", "s_distance")


def nu_from_lambda(lam: float) -> float:
    """nu = sqrt(1/4 + lambda) for a repulsive coupling lambda > 0."""
    if not lam > 0.0:
        raise DomainError(f"need lambda > 0 (repulsive potential), got {lam!r}")
    return math.sqrt(0.25 + lam)


def phase_shift_analytic(lam: float) -> float:
    """delta = pi/4 - pi nu / 2, energy independent; zero at lambda = 0."""
    if not lam >= 0.0:
        raise DomainError(f"need lambda >= 0, got {lam!r}")
    nu = math.sqrt(0.25 + lam)
    return 0.25 * math.pi - 0.5 * math.pi * nu


def s_matrix(delta: float) -> complex:
    return cmath.exp(2j * delta)


def s_distance(d1: float, d2: float) -> float:
    """|e^(2i d1) - e^(2i d2)|, blind to the mod-pi ambiguity of a phase."""
    return abs(s_matrix(d1) - s_matrix(d2))


@dataclass(frozen=True)
class RadialSolverConfig:
    r0: float
    r_match: float
    ode_tol: float = 1e-10
    richardson: bool = True

    def __post_init__(self):
        if not 0.0 < self.r0 < self.r_match:
            raise DomainError("need 0 < r0 < r_match")
        if not self.ode_tol > 0.0:
            raise DomainError("ode_tol must be positive")

    @classmethod
    def for_wavenumber(cls, k: float, ode_tol: float = 1e-10, richardson: bool = True) -> "RadialSolverConfig":
        """Defaults r0 = 1e-6/k and r_match = 200/k."""
        return cls(r0=1e-6 / k, r_match=200.0 / k, ode_tol=ode_tol, richardson=richardson)


@dataclass(frozen=True)
class PhaseShiftResult:
    lam: float
    nu: float
    k: float
    delta_analytic: float
    delta_numeric: float
    s_matrix: complex
    steps: int = 0

    @property
    def s_distance(self) -> float:
        return abs(self.s_matrix - s_matrix(self.delta_analytic))

    def tsv_row(self) -> str:
        vals = (self.lam, self.nu, self.k, self.delta_analytic, self.delta_numeric,
                self.s_matrix.real, self.s_matrix.imag, self.s_distance)
        return "\t".join(format(v, ".17g") for v in vals)


@dataclass
class _Track:
    """Integration state carried from one radius to the next."""

    r: float
    u: float
    du: float
    crossings: int = 0
    steps: int = 0
    h: float = 0.0


def _start(lam: float, k: float, cfg: RadialSolverConfig) -> _Track:
    nu = math.sqrt(0.25 + lam)
    r0 = cfg.r0
    return _Track(r=r0, u=r0 ** (0.5 + nu), du=(0.5 + nu) * r0 ** (nu - 0.5), h=0.01 * r0)


def _advance(track: _Track, lam: float, k: float, r_end: float, tol: float) -> None:
    u, du, crossings, steps, h, ok = kernels.radial_dp45(
        lam, k, track.r, r_end, track.u, track.du, tol, track.h
    )
    if not ok:
        raise SolverError(f"ODE integration stalled before r = {r_end:g}")
    if not (math.isfinite(u) and math.isfinite(du)):
        raise SolverError("ODE solution overflowed")
    track.r = r_end
    track.u, track.du = u, du
    track.crossings += crossings
    track.steps += steps
    track.h = h


def radial_solution(lam: float, k: float, r: float, cfg: RadialSolverConfig | None = None) -> tuple:
    """Regular solution (u, u') at radius r, normalised as u ~ r^(1/2 + nu) at the origin."""
    if not (lam > 0.0 and k > 0.0):
        raise DomainError("need lambda > 0 and k > 0")
    cfg = cfg or RadialSolverConfig.for_wavenumber(k)
    track = _start(lam, k, cfg)
    if r < cfg.r0:
        raise DomainError(f"r = {r:g} lies inside the start radius {cfg.r0:g}")
    if r > cfg.r0:
        _advance(track, lam, k, r, cfg.ode_tol)
    return track.u, track.du


def _phase_at(track: _Track, k: float) -> float:
    # u ~ A sin(k r + delta); each node of u adds pi to the unwrapped phase
    if track.crossings == 0:
        raise SolverError("solution has no node before the matching radius (not oscillatory)")
    frac = math.atan2(track.u, track.du / k) % math.pi
    return track.crossings * math.pi + frac - k * track.r


def phase_shift_numeric(lam: float, k: float, cfg: RadialSolverConfig | None = None) -> PhaseShiftResult:
    """Phase shift from outward integration of u'' = (lambda / r^2 - k^2) u.

    The phase is read off at r_match from tan(k r + delta) = k u / u'. The
    centrifugal tail shifts that reading by O(1 / (k r)), so with
    ``richardson`` on it is repeated at 2 r_match and extrapolated.
    """
    nu = nu_from_lambda(lam)
    if not k > 0.0:
        raise DomainError(f"need k > 0, got {k!r}")
    cfg = cfg or RadialSolverConfig.for_wavenumber(k)
    track = _start(lam, k, cfg)
    _advance(track, lam, k, cfg.r_match, cfg.ode_tol)
    d1 = _phase_at(track, k)
    if cfg.richardson:
        _advance(track, lam, k, 2.0 * cfg.r_match, cfg.ode_tol)
        d2 = _phase_at(track, k)
        delta = 2.0 * d2 - d1
    else:
        delta = d1
    delta_a = phase_shift_analytic(lam)
    # report the branch nearest the analytic value
    delta += math.pi * round((delta_a - delta) / math.pi)
    return PhaseShiftResult(lam, nu, k, delta_a, delta, s_matrix(delta), track.steps)


def phase_sweep(lams, ks, jobs: int = 1, ode_tol: float = 1e-10) -> list:
    """phase_shift_numeric over the grid lams x ks, ordered lambda-major."""
    grid = [(lam, k) for lam in lams for k in ks]

    def one(p):
        lam, k = p
        return phase_shift_numeric(lam, k, RadialSolverConfig.for_wavenumber(k, ode_tol))

    if jobs <= 1:
        return [one(p) for p in grid]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(one, grid))


def write_phase_tsv(path, results, comment: str = "") -> None:
    lines = []
    if comment:
        lines.append("# " + comment)
    lines.append("\t".join(TSV_COLUMNS))
    lines.extend(r.tsv_row() for r in results)
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


# --- Jost solution ---------------------------------------------------------------


@dataclass(frozen=True)
class JostSample:
    k: float
    r: float
    nu: float
    value: complex

    @property
    def asymptotic_defect(self) -> float:
        """|f e^(-ikr) - 1|, which goes to zero as kr grows."""
        return abs(self.value * cmath.exp(-1j * self.k * self.r) - 1.0)


def jost_solution(k: float, r: float, nu: float) -> complex:
    """f(k, r) = sqrt(pi k r / 2) e^(i(pi nu/2 + pi/4)) H1_nu(k r), tending to e^(ikr)."""
    if not (k > 0.0 and r > 0.0):
        raise DomainError("need k > 0 and r > 0")
    z = k * r
    return math.sqrt(0.5 * math.pi * z) * cmath.exp(1j * (0.5 * math.pi * nu + 0.25 * math.pi)) * hankel1(nu, z)


def jost_sample(k: float, r: float, nu: float) -> JostSample:
    return JostSample(k, r, nu, jost_solution(k, r, nu))


# --- K_nu^2 norm integral -------------------------------------------------------------


def k_squared_closed_form(nu: float, tau: float) -> float:
    """pi nu / (2 tau^2 sin(pi nu)), the value of int_0^inf r K_nu(tau r)^2 dr for 0 < nu < 1."""
    return math.pi * nu / (2.0 * tau * tau * math.sin(math.pi * nu))


def k_squared_stated(nu: float, tau: float) -> float:
    """The audited formula (1/8)(1/tau^2)(pi nu / sin pi nu)."""
    return 0.125 / (tau * tau) * math.pi * nu / math.sin(math.pi * nu)


@dataclass(frozen=True)
class KIntegral:
    value: float
    abs_err: float
    inner: float
    outer: float


def _k_sq(nu: float, x: np.ndarray) -> np.ndarray:
    return np.array([bessel_k(nu, float(v)) ** 2 for v in x])


def k_squared_integral(nu: float, tau: float, full_output: bool = False):
    """int_0^inf r K_nu(tau r)^2 dr by split double-exponential quadrature.

    On (0, 1/tau] the substitution r = w^p / tau with p = 1/(2 - 2 nu) makes the
    r^(1 - 2 nu) endpoint behaviour flat before tanh-sinh; [1/tau, inf) uses
    exp-sinh. Diverges at the origin for nu >= 1.
    """
    if not tau > 0.0:
        raise DomainError(f"need tau > 0, got {tau!r}")
    if not nu > 0.0:
        raise DomainError(f"need nu > 0, got {nu!r}")
    if nu >= 1.0:
        raise DivergenceError(
            f"r K_nu(tau r)^2 ~ r^(1 - 2 nu) is not integrable at r = 0 for nu = {nu:g} >= 1"
        )
    if nu <= 0.5:
        warnings.warn(f"nu = {nu:g} <= 1/2 lies outside the repulsive regime", RuntimeWarning, stacklevel=2)
    p = 1.0 / (2.0 - 2.0 * nu)
    inv_t2 = 1.0 / (tau * tau)

    def inner(w):
        w = np.asarray(w, dtype=float)
        out = np.zeros_like(w)
        # below w ~ 1e-15 the flattened integrand is a bounded constant times w
        keep = w > 1e-15
        x = w[keep] ** p
        keep_x = x > 1e-300
        idx = np.flatnonzero(keep)[keep_x]
        x = x[keep_x]
        out[idx] = p * w[idx] ** (p - 1.0) * x * _k_sq(nu, x)
        return out

    def outer(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        keep = x <= 40.0
        out[keep] = x[keep] * _k_sq(nu, x[keep])
        return out

    a = tanh_sinh(inner, 0.0, 1.0, abs_tol=1e-13, max_levels=8)
    b = exp_sinh(outer, 1.0, abs_tol=1e-13, max_levels=8)
    res = KIntegral(
        value=inv_t2 * (a.value + b.value),
        abs_err=inv_t2 * (a.abs_err + b.abs_err),
        inner=inv_t2 * a.value,
        outer=inv_t2 * b.value,
    )
    return res if full_output else res.value


def k_squared_partial(nu: float, tau: float, eps: float) -> float:
    """int_{eps/tau}^inf r K_nu(tau r)^2 dr; finite for every eps > 0, any nu > 0."""
    if not (tau > 0.0 and 0.0 < eps < 1.0):
        raise DomainError("need tau > 0 and 0 < eps < 1")

    def inner(y):
        # r = e^y / tau over y in [ln eps, 0]
        x = np.exp(np.asarray(y, dtype=float))
        return x * x * _k_sq(nu, x)

    def outer(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        keep = x <= 40.0
        out[keep] = x[keep] * _k_sq(nu, x[keep])
        return out

    a = tanh_sinh(inner, math.log(eps), 0.0, abs_tol=1e-12, max_levels=8)
    b = exp_sinh(outer, 1.0, abs_tol=1e-13, max_levels=8)
    return (a.value + b.value) / (tau * tau)


@dataclass
class RealityFinding:
    nu: float
    tau: float
    integral: float
    finite: bool
    nonzero: bool
    conclusion: bool
    partials: dict = field(default_factory=dict)
    note: str = ""


def reality_argument_report(nu: float, tau: float) -> RealityFinding:
    """Whether Im lambda_n(i tau) = 0 follows: it does exactly when the K^2 integral is finite and nonzero."""
    if not tau > 0.0:
        raise DomainError(f"need tau > 0 (tau = 0 excluded), got {tau!r}")
    if nu >= 1.0:
        partials = {eps: k_squared_partial(nu, tau, eps) for eps in (1e-2, 1e-4, 1e-6)}
        return RealityFinding(
            nu, tau, math.inf, False, False, False, partials,
            f"diverges at the origin: integrand ~ r^({1 - 2 * nu:g}); partial integrals grow as the cutoff shrinks",
        )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        value = k_squared_integral(nu, tau)
    finite = math.isfinite(value)
    nonzero = finite and value > NONZERO_MARGIN
    note = "Im lambda_n(i tau) = 0 follows" if finite and nonzero else "conclusion withheld"
    return RealityFinding(nu, tau, value, finite, nonzero, finite and nonzero, {}, note)
