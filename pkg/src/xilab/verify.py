"""Check registry, suite runner, report and plot-data emitters."""

from __future__ import annotations

import json
import math
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Callable

from . import __version__, kernels
from .coupling import audit_spectrum, lambda_from_zero
from .errors import UsageError, XilabError
from .scattering import (
    RadialSolverConfig,
    jost_sample,
    k_squared_closed_form,
    k_squared_integral,
    k_squared_partial,
    phase_shift_analytic,
    phase_shift_numeric,
    reality_argument_report,
    s_distance,
)
from .specfun import DEFAULT_CONFIG, SpecFunConfig, complex_zeta
from .xi_engine import (
    ChiConstants,
    HadamardTruncation,
    b0_closed_form,
    big_xi,
    chi_direct,
    chi_lambda_roundtrip,
    chi_via_ratio,
    estimate_b0,
    hadamard_partial,
    stated_b0,
    xi,
)
from .zero_scan import ScanConfig, cached_zeros

CONFIRMED = "CONFIRMED"
REFUTED = "REFUTED"
NOT_APPLICABLE = "NOT_APPLICABLE"
VERDICTS = (CONFIRMED, REFUTED, NOT_APPLICABLE)

# how a row's verdict follows from its numbers
MATCH = "match"  # abs_err <= tol or rel_err <= tol
BELOW = "below"  # lhs < rhs - tol
ABOVE = "above"  # lhs > rhs + tol

# literature values used as references
T1_REFERENCE = 14.134725141734694
LAMBDA1_REFERENCE = -200.0404454
E_PI = 23.140692632779269

FIRST_TEN = ScanConfig(t_min=0.0, t_max=50.0, step=0.05, bisect_tol=1e-10)
# N = 100 zeros need ordinates up to about 236.5
HADAMARD_SCAN = ScanConfig(t_min=0.0, t_max=240.0, step=0.05, bisect_tol=1e-10)


@dataclass
class VerificationResult:
    check_id: str
    paper_anchor: str
    lhs: object
    rhs: object
    abs_err: float | None
    rel_err: float | None
    tolerance: float
    verdict: str
    metric: str = MATCH
    case: str = ""
    diagnostic: str = ""


def decide(metric: str, lhs, rhs, abs_err, rel_err, tol) -> str:
    if metric == MATCH:
        ok = abs_err <= tol or rel_err <= tol
    elif metric == BELOW:
        ok = lhs < rhs - tol
    elif metric == ABOVE:
        ok = lhs > rhs + tol
    else:
        raise ValueError(f"unknown metric {metric!r}")
    return CONFIRMED if ok else REFUTED


@dataclass(frozen=True)
class Check:
    check_id: str
    anchor: str
    tolerance: float
    run: Callable

    @property
    def module(self) -> str:
        return self.check_id.split(".", 1)[0]


@dataclass
class Context:
    """What a check sees: its tolerance and the numerical configuration."""

    check: Check
    tol: float
    config: SpecFunConfig = DEFAULT_CONFIG
    rows: list = field(default_factory=list)

    def row(self, lhs, rhs, tol=None, case="", metric=MATCH, abs_err=None, diagnostic=""):
        tol = self.tol if tol is None else tol
        if abs_err is None:
            abs_err = abs(lhs - rhs)
        scale = abs(rhs)
        if scale > 0.0:
            rel_err = abs_err / scale
        else:
            rel_err = 0.0 if abs_err == 0.0 else math.inf
        verdict = decide(metric, lhs, rhs, abs_err, rel_err, tol)
        self.rows.append(
            VerificationResult(
                self.check.check_id, self.check.anchor, lhs, rhs,
                float(abs_err), float(rel_err), float(tol), verdict, metric, case, diagnostic,
            )
        )


# --- checks -------------------------------------------------------------------


def _functional_equation(ctx: Context):
    worst = 0.0
    for i in range(21):
        sigma = -2.0 + 0.25 * i
        for t in range(41):
            s = complex(sigma, t)
            a = xi(s, ctx.config)
            b = xi(1.0 - s, ctx.config)
            worst = max(worst, abs(a - b) / (1.0 + abs(a)))
    ctx.row(worst, 0.0)


def _no_zeros_outside_strip(ctx: Context):
    # |xi| itself decays like exp(-pi t / 4); its zeta factor carries the zeros
    min_zeta = math.inf
    min_xi = math.inf
    for sigma in (1.1, 1.5, 2.0, 3.0, -0.1, -1.0):
        for j in range(81):
            s = complex(sigma, 0.5 * j)
            min_zeta = min(min_zeta, abs(complex_zeta(s, ctx.config)))
            min_xi = min(min_xi, abs(xi(s, ctx.config)))
    ctx.row(min_zeta, 1e-6, tol=0.0, metric=ABOVE, abs_err=max(0.0, 1e-6 - min_zeta))
    ctx.row(min_xi, 0.0, tol=0.0, case="min |xi| on grid", metric=ABOVE, abs_err=0.0 if min_xi > 0 else 1.0)


def _first_ten(ctx: Context):
    em = cached_zeros(FIRST_TEN, "em", ctx.config)
    eta = cached_zeros(FIRST_TEN, "eta", ctx.config)
    ctx.row(em[0].t, T1_REFERENCE)
    ctx.row(len(em), 10, tol=0.0, case="count on [0, 50]")
    if len(em) == len(eta):
        gap = max(abs(a.t - b.t) for a, b in zip(em, eta))
        ctx.row(gap, 0.0, tol=1e-8, case="eta route agreement")
    else:
        ctx.row(len(eta), len(em), tol=0.0, case="eta route count")


def _hadamard_convergence(ctx: Context):
    zeros = cached_zeros(HADAMARD_SCAN, "em", ctx.config)
    b0 = estimate_b0(config=ctx.config)
    target = xi(2.0, ctx.config).real
    errors = []
    for n in (10, 50, 100):
        approx = hadamard_partial(2.0, zeros, HadamardTruncation(n, b0)).real
        errors.append(abs(approx - target) / target)
        if n == 100:
            ctx.row(approx, target, metric=MATCH, abs_err=abs(approx - target))
        else:
            ctx.row(approx, target, case=f"N={n}", abs_err=abs(approx - target))
    ups = sum(1 for a, b in zip(errors, errors[1:]) if not b < a)
    ctx.row(ups, 0, tol=0.0, case="non-decreasing steps in error")


def _b0_eq39(ctx: Context):
    est = estimate_b0(config=ctx.config)
    ctx.row(est, stated_b0())
    ctx.row(est, b0_closed_form(), case="vs -gamma/2 - 1 + ln(4 pi)/2")


def _spectrum_rows(ctx: Context):
    return audit_spectrum(cached_zeros(FIRST_TEN, "em", ctx.config)).rows


def _real_negative(ctx: Context):
    rows = _spectrum_rows(ctx)
    worst = max(r.im_residual / (1.0 + abs(r.lam)) for r in rows)
    ctx.row(worst, 0.0)
    ctx.row(max(r.lam for r in rows), 0.0, tol=0.0, case="largest lambda_n", metric=BELOW)
    lam1 = lambda_from_zero(cached_zeros(FIRST_TEN, "em", ctx.config)[0]).lam
    ctx.row(lam1, LAMBDA1_REFERENCE, tol=1e-3, case="lambda_1")


def _below_quarter(ctx: Context):
    rows = _spectrum_rows(ctx)
    ctx.row(max(r.lam for r in rows), -0.25, tol=0.0, metric=BELOW)
    ctx.row(max(r.roundtrip_err for r in rows), 0.0, tol=1e-10, case="s <-> lambda round trip")


SCATTER_LAMBDAS = (0.5, 1.0, 2.0, 5.0)
SCATTER_KS = (0.5, 1.0, 2.0)


def _phase_grid(ctx: Context):
    return {
        (lam, k): phase_shift_numeric(lam, k, RadialSolverConfig.for_wavenumber(k))
        for lam in SCATTER_LAMBDAS
        for k in SCATTER_KS
    }


def _phase_match(ctx: Context):
    grid = _phase_grid(ctx)
    worst = max(r.s_distance for r in grid.values())
    ctx.row(worst, 0.0)
    for (lam, k), r in grid.items():
        ctx.row(r.delta_numeric, r.delta_analytic, case=f"lambda={lam:g} k={k:g}", abs_err=r.s_distance)


def _energy_independence(ctx: Context):
    grid = _phase_grid(ctx)
    spreads = []
    for lam in SCATTER_LAMBDAS:
        deltas = [grid[(lam, k)].delta_numeric for k in SCATTER_KS]
        spread = max(s_distance(a, b) for a in deltas for b in deltas)
        spreads.append((lam, spread))
    ctx.row(max(s for _, s in spreads), 0.0)
    for lam, spread in spreads:
        ctx.row(spread, 0.0, case=f"lambda={lam:g}")


def _jost_asymptotic(ctx: Context):
    for nu in (0.75, 0.6):
        far = jost_sample(1.0, 200.0, nu).asymptotic_defect
        near = jost_sample(1.0, 50.0, nu).asymptotic_defect
        ok = math.isfinite(far) and math.isfinite(near)
        ctx.row(far, near, tol=0.0, metric=BELOW, case="" if nu == 0.75 else f"nu={nu:g}",
                abs_err=abs(far - near), diagnostic="" if ok else "non-finite defect")


def _k_integral(ctx: Context):
    nu, tau = 0.75, 1.0
    base = k_squared_integral(nu, tau)
    stated = 0.125 * math.pi * nu / math.sin(math.pi * nu) / (tau * tau)
    ctx.row(base, stated)
    ctx.row(base / stated, 4.0, tol=1e-6, case="quadrature / stated ratio")
    for v in (0.6, 0.75, 0.9):
        scaled = []
        for t in (0.5, 1.0, 2.0):
            q = k_squared_integral(v, t)
            ctx.row(q, k_squared_closed_form(v, t), tol=1e-8, case=f"closed form nu={v:g} tau={t:g}")
            scaled.append(q * t * t)
        spread = (max(scaled) - min(scaled)) / max(scaled)
        ctx.row(spread, 0.0, tol=1e-8, case=f"tau^2 scaling nu={v:g}")


def _reality_conclusion(ctx: Context):
    ok = reality_argument_report(0.75, 1.0)
    ctx.row(ok.integral, 1e-12, tol=0.0, metric=ABOVE, diagnostic=ok.note)
    bad = reality_argument_report(1.5, 1.0)
    # a convergent integral would make this ratio tend to 1
    growth = bad.partials[1e-6] / bad.partials[1e-4]
    ctx.row(growth, 1.0, tol=1e-6, case="nu=1.5 partial-integral growth per 100x cutoff", diagnostic=bad.note)


def _chi_roundtrip(ctx: Context):
    rng = random.Random(20240601)
    worst = 0.0
    for _ in range(50):
        s = 1.0 + 9.0 * (1.0 - rng.random())
        exact = s * (s - 1.0)
        worst = max(worst, abs(chi_lambda_roundtrip(s) - exact) / exact)
    ctx.row(worst, 0.0)
    ctx.row(chi_direct(2.0), E_PI, tol=1e-12, case="chi_direct(2) = e^pi")


def _chi_ratio(ctx: Context):
    consts = ChiConstants.stated()
    for s in (2.0, 3.0, -1.0, -2.0):
        ratio = chi_via_ratio(s, consts, ctx.config).real
        ctx.row(ratio, chi_direct(s), case="" if s == 2.0 else f"s={s:g}")


def _beta_eq41(ctx: Context):
    beta = ChiConstants.stated().beta
    ctx.row(beta, math.pi - stated_b0())
    ctx.row(beta, math.pi - estimate_b0(config=ctx.config), case="vs pi - numeric b0")


REGISTRY = (
    Check("xi.functional_equation", "intro: xi(s) = xi(1-s)", 1e-9, _functional_equation),
    Check("xi.no_zeros_outside_strip", "intro: no zeros of xi for sigma > 1", 1e-6, _no_zeros_outside_strip),
    Check("zeros.first_ten", "intro: s_n = 1/2 + i t_n", 1e-6, _first_ten),
    Check("hadamard.convergence", "Eq. 38: (1/2) e^(b0 s) prod (1 - s/s_n) e^(s/s_n)", 0.1, _hadamard_convergence),
    Check("hadamard.b0_eq39", "Eq. 39: b0 = -gamma/2 - 1 - (1/2) ln 4pi", 1e-5, _b0_eq39),
    Check("spectrum.real_negative", "Eq. 15, coupling condition: lambda_n(0) real and negative", 1e-12, _real_negative),
    Check("spectrum.below_quarter", "Eq. 15, coupling condition: lambda_n < -1/4", 0.0, _below_quarter),
    Check("scatter.phase_match", "Eq. 8: delta = pi/4 - pi nu/2", 1e-4, _phase_match),
    Check("scatter.energy_independence", "Eq. 8: delta independent of k", 1e-4, _energy_independence),
    Check("scatter.jost_asymptotic", "Eq. 34: f(k,r) -> e^(ikr)", 0.0, _jost_asymptotic),
    Check("scatter.k_integral_eq36pp", "Eq. 36'': int r K_nu(tau r)^2 dr = (1/8)(1/tau^2)(pi nu / sin pi nu)", 1e-8, _k_integral),
    Check("scatter.reality_conclusion", "Eq. 32: Im lambda_n(i tau) = 0", 0.0, _reality_conclusion),
    Check("chi.lambda_roundtrip", "Eq. 27: lambda = |ln chi|/pi + |ln chi|^2/pi^2", 1e-12, _chi_roundtrip),
    Check("chi.ratio_vs_direct", "Eq. 37 vs Eq. 29: chi = xi e^(alpha + beta s)", 1e-6, _chi_ratio),
    Check("chi.beta_eq41", "Eq. 41: beta = pi + gamma/2 + 1 - (1/2) ln 4pi", 1e-8, _beta_eq41),
)
CHECKS = {c.check_id: c for c in REGISTRY}


def check_ids() -> list:
    return [c.check_id for c in REGISTRY]


def default_tolerances() -> dict:
    return {c.check_id: c.tolerance for c in REGISTRY}


def select(selection) -> list:
    """Registry entries for a selection: "all", one id, or a list of ids (kept in registry order)."""
    if selection is None or selection == "all":
        return list(REGISTRY)
    if isinstance(selection, str):
        selection = [selection]
    wanted = list(selection)
    if "all" in wanted:
        return list(REGISTRY)
    unknown = [s for s in wanted if s not in CHECKS]
    if unknown:
        raise UsageError(f"unknown check id(s): {', '.join(unknown)}")
    if not wanted:
        raise UsageError("empty check selection")
    return [c for c in REGISTRY if c.check_id in wanted]


def run_check(check: Check, tol: float, config: SpecFunConfig = DEFAULT_CONFIG) -> list:
    ctx = Context(check, tol, config)
    try:
        check.run(ctx)
    except (XilabError, ArithmeticError, ValueError, RuntimeError) as exc:
        return [
            VerificationResult(check.check_id, check.anchor, None, None, None, None, tol,
                               NOT_APPLICABLE, diagnostic=f"{type(exc).__name__}: {exc}")
        ]
    return ctx.rows


# --- reports ------------------------------------------------------------------


@dataclass
class Report:
    artifact_version: str
    config_snapshot: dict
    results: list
    summary: dict


def tally(results) -> dict:
    counts = {v: 0 for v in VERDICTS}
    for r in results:
        counts[r.verdict] += 1
    return counts


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = float(epoch) if epoch else time.time()
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


def run_suite(
    selection="all",
    tolerances: dict | None = None,
    jobs: int = 1,
    config: SpecFunConfig = DEFAULT_CONFIG,
) -> Report:
    """Run the selected checks; rows come back in registry order whatever ``jobs`` is."""
    checks = select(selection)
    tols = default_tolerances()
    for key, value in (tolerances or {}).items():
        if key not in CHECKS:
            raise UsageError(f"--tol names unknown check {key!r}")
        tols[key] = float(value)
    if jobs <= 1:
        parts = [run_check(c, tols[c.check_id], config) for c in checks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda c: run_check(c, tols[c.check_id], config), checks))
    results = [r for part in parts for r in part]
    snapshot = {
        "selection": [c.check_id for c in checks],
        "tolerances": {c.check_id: tols[c.check_id] for c in checks},
        "jobs": jobs,
        "backend": kernels.BACKEND,
        "specfun": asdict(config),
        "timestamp": _timestamp(),
    }
    return Report(__version__, snapshot, results, tally(results))


def empty_report() -> Report:
    return Report(__version__, {"selection": [], "timestamp": _timestamp()}, [], tally([]))


def _encode(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, complex):
        return {"re": _encode(v.real), "im": _encode(v.imag)}
    if isinstance(v, float):
        return v if math.isfinite(v) else repr(v)
    return v


def _decode(v):
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return complex(_decode(v["re"]), _decode(v["im"]))
    if isinstance(v, str) and v in ("inf", "-inf", "nan"):
        return float(v)
    return v


NUMERIC_FIELDS = ("lhs", "rhs", "abs_err", "rel_err", "tolerance")


def report_to_dict(report: Report) -> dict:
    rows = []
    for r in report.results:
        d = asdict(r)
        for key in NUMERIC_FIELDS:
            d[key] = _encode(d[key])
        rows.append(d)
    return {
        "version": report.artifact_version,
        "config": report.config_snapshot,
        "results": rows,
        "summary": dict(report.summary),
    }


def report_from_dict(doc: dict) -> Report:
    names = {f.name for f in fields(VerificationResult)}
    results = []
    for d in doc["results"]:
        d = {k: v for k, v in d.items() if k in names}
        for key in NUMERIC_FIELDS:
            d[key] = _decode(d[key])
        results.append(VerificationResult(**d))
    return Report(doc["version"], doc["config"], results, doc["summary"])


GLYPH = {CONFIRMED: "✅", REFUTED: "❌", NOT_APPLICABLE: "➖"}


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v.replace("|", "\\|")
    if isinstance(v, complex):
        return f"{v.real:.10g}{v.imag:+.10g}i"
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def report_markdown(report: Report) -> str:
    out = [f"# Verification report (xilab {report.artifact_version})", ""]
    s = report.summary
    out.append(
        f"{s.get(CONFIRMED, 0)} confirmed, {s.get(REFUTED, 0)} refuted, "
        f"{s.get(NOT_APPLICABLE, 0)} not applicable."
    )
    modules = []
    for r in report.results:
        mod = r.check_id.split(".", 1)[0]
        if mod not in modules:
            modules.append(mod)
    for mod in modules:
        out += ["", f"## {mod}", ""]
        out.append("| check | case | verdict | lhs | rhs | abs discrepancy | rel discrepancy | tolerance | note |")
        out.append("|---|---|---|---|---|---|---|---|---|")
        for r in report.results:
            if r.check_id.split(".", 1)[0] != mod:
                continue
            out.append(
                f"| {r.check_id} | {_cell(r.case)} | {GLYPH[r.verdict]} {r.verdict} | {_cell(r.lhs)} | {_cell(r.rhs)} "
                f"| {_cell(r.abs_err)} | {_cell(r.rel_err)} | {_cell(r.tolerance)} | {_cell(r.diagnostic)} |"
            )
    return "\n".join(out) + "\n"


def emit_report(report: Report, fmt: str, path=None) -> str:
    """Render ``report`` as ``json`` or ``markdown``; also write it when a path is given."""
    if fmt == "json":
        text = json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"
    elif fmt == "markdown":
        text = report_markdown(report)
    else:
        raise UsageError(f"unknown report format {fmt!r}")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    return text


def load_report(path) -> Report:
    return report_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


# --- plot data ------------------------------------------------------------------------


PLOT_KINDS = ("big_xi_curve", "spectrum", "phase_sweep")


def _grid(lo: float, hi: float, step: float) -> list:
    if not (math.isfinite(lo) and math.isfinite(hi) and step > 0 and hi > lo):
        raise UsageError(f"invalid range [{lo}, {hi}] with step {step}")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + i * step for i in range(n + 1)]


def emit_plot_data(kind: str, path, *, t_min=0.0, t_max=50.0, step=0.1, zeros=None,
                   lam_min=0.1, lam_max=10.0, points=41, config: SpecFunConfig = DEFAULT_CONFIG) -> int:
    """Write a TSV for plotting and return its row count.

    The first line is a comment naming the columns and the generating flags.
    """
    rows = []
    if kind == "big_xi_curve":
        flags = f"t_min={t_min:g} t_max={t_max:g} step={step:g}"
        columns = ("t", "Xi")
        for t in _grid(t_min, t_max, step):
            rows.append((t, big_xi(t, config)))
    elif kind == "spectrum":
        if zeros is None:
            zeros = cached_zeros(FIRST_TEN, "em", config)
        if not zeros:
            raise UsageError("spectrum plot needs a nonempty zero table")
        flags = f"zeros={len(zeros)}"
        columns = ("n", "t", "lambda")
        for z in zeros:
            rows.append((z.n, z.t, lambda_from_zero(z).lam))
    elif kind == "phase_sweep":
        if not (0 < lam_min < lam_max and points >= 2):
            raise UsageError("phase_sweep needs 0 < lam_min < lam_max and points >= 2")
        flags = f"lam_min={lam_min:g} lam_max={lam_max:g} points={points} k=1"
        columns = ("lambda", "nu", "delta_analytic", "delta_numeric")
        ratio = math.log(lam_max / lam_min) / (points - 1)
        for i in range(points):
            lam = lam_min * math.exp(i * ratio)
            res = phase_shift_numeric(lam, 1.0)
            rows.append((lam, res.nu, phase_shift_analytic(lam), res.delta_numeric))
    else:
        raise UsageError(f"unknown plot kind {kind!r}; expected one of {', '.join(PLOT_KINDS)}")
    lines = [f"# columns: {' '.join(columns)}; kind={kind} {flags}"]
    for row in rows:
        lines.append("\t".join(str(v) if isinstance(v, int) else format(v, ".17g") for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")
    return len(rows)
