"""Coupling constants lambda = s(s - 1) attached to critical-line zeros."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import AccuracyError
from .zero_scan import CriticalZero

IM_TOL = 1e-12
ROUNDTRIP_TOL = 1e-10
QUARTER = 0.25
SPECTRUM_HEADER = "n,t,lambda,im_residual"


@dataclass(frozen=True)
class CouplingConstant:
    n: int
    lam: float
    source_t: float
    im_residual: float


def lambda_from_s(s) -> complex:
    """lambda = s (s - 1); symmetric under s -> 1 - s."""
    z = complex(s)
    return z * (z - 1.0)


def lambda_from_zero(z: CriticalZero) -> CouplingConstant:
    """Coupling for the zero 1/2 + i t_n, with the imaginary residue audited then dropped."""
    lam = lambda_from_s(complex(0.5, z.t))
    residual = abs(lam.imag)
    if not (math.isfinite(lam.real) and residual <= IM_TOL * (1.0 + abs(lam.real))):
        raise AccuracyError(f"zero n={z.n}: Im lambda residue {residual!r} above tolerance")
    return CouplingConstant(n=z.n, lam=lam.real, source_t=z.t, im_residual=residual)


def s_from_lambda(lam: float) -> tuple:
    """Both roots 1/2 +- sqrt(1/4 + lambda), larger real/imaginary part first.

    For lambda < -1/4 the roots are 1/2 +- i t with real part exactly 1/2.
    """
    disc = QUARTER + float(lam)
    if disc >= 0.0:
        r = math.sqrt(disc)
        return complex(0.5 + r, 0.0), complex(0.5 - r, 0.0)
    t = math.sqrt(-disc)
    return complex(0.5, t), complex(0.5, -t)


@dataclass
class AuditRow:
    n: int
    t: float
    lam: float
    im_residual: float
    real_ok: bool
    below_quarter: bool
    roundtrip_err: float
    roundtrip_ok: bool
    error: str = ""

    @property
    def passed(self) -> bool:
        return self.real_ok and self.below_quarter and self.roundtrip_ok and not self.error


@dataclass
class SpectrumAudit:
    rows: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if not self.rows:
            return "NOT_APPLICABLE"
        return "CONFIRMED" if all(r.passed for r in self.rows) else "REFUTED"


def audit_row(z: CriticalZero) -> AuditRow:
    lam_c = lambda_from_s(complex(0.5, z.t))
    residual = abs(lam_c.imag)
    lam = lam_c.real
    error = ""
    if not (math.isfinite(z.t) and math.isfinite(lam) and math.isfinite(residual)):
        error = "accuracy error: non-finite ordinate or coupling"
    real_ok = residual <= IM_TOL * (1.0 + abs(lam))
    below = lam < -QUARTER
    if math.isfinite(lam):
        root = s_from_lambda(lam)[0]
        rt_err = abs(abs(root.imag) - z.t)
    else:
        rt_err = math.nan
    rt_ok = rt_err <= ROUNDTRIP_TOL
    return AuditRow(z.n, z.t, lam, residual, real_ok, below, rt_err, rt_ok, error)


def audit_spectrum(zeros) -> SpectrumAudit:
    """One audit row per zero: realness, lambda < -1/4, and the s <-> lambda round trip."""
    return SpectrumAudit([audit_row(z) for z in zeros])


def spectrum(zeros) -> list:
    return [lambda_from_zero(z) for z in zeros]


def write_spectrum(path, couplings) -> None:
    lines = [SPECTRUM_HEADER]
    for c in couplings:
        lines.append(f"{c.n},{c.source_t:.17g},{c.lam:.17g},{c.im_residual:.17g}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def read_spectrum(path) -> list:
    lines = Path(path).read_text(encoding="ascii").splitlines()
    if not lines or lines[0] != SPECTRUM_HEADER:
        raise ValueError(f"expected header {SPECTRUM_HEADER!r}")
    out = []
    for line in lines[1:]:
        n, t, lam, res = line.split(",")
        out.append(CouplingConstant(int(n), float(lam), float(t), float(res)))
    return out
