"""Command-line entry point: ``xilab <command> [options]``.

Exit codes: 0 on a completed run, 1 under ``verify --strict`` when a check is
refuted, 2 on usage or internal errors.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import __version__
from .coupling import spectrum, write_spectrum
from .errors import UsageError, XilabError
from .scattering import (
    TSV_COLUMNS,
    RadialSolverConfig,
    phase_shift_numeric,
    s_distance,
    write_phase_tsv,
)
from .specfun import SpecFunConfig
from .verify import PLOT_KINDS, REFUTED, check_ids, emit_plot_data, emit_report, run_suite
from .xi_engine import xi
from .zero_scan import ScanConfig, find_zeros, read_zero_table, write_zero_table, write_zero_table_json

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _tol_pair(text: str):
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected <check_id>=<value>, got {text!r}")
    try:
        v = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance {value!r} is not a number") from None
    if not (math.isfinite(v) and v >= 0):
        raise argparse.ArgumentTypeError("tolerance must be finite and >= 0")
    return key, v


def _add_specfun_flags(p):
    p.add_argument("--zeta-terms-min", type=int, default=30)
    p.add_argument("--zeta-bernoulli-order", type=int, default=12)


def _specfun(args) -> SpecFunConfig:
    try:
        return SpecFunConfig(zeta_terms_min=args.zeta_terms_min, zeta_bernoulli_order=args.zeta_bernoulli_order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xilab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"xilab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("zeros", help="scan Xi(t) for critical-line zeros")
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=60.0)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--tol", type=float, default=1e-10, help="bisection width")
    p.add_argument("--method", choices=("em", "eta"), default="em")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="CSV path (.json writes the JSON form); stdout if omitted")
    _add_specfun_flags(p)

    p = sub.add_parser("xi", help="evaluate xi(re + i im)")
    p.add_argument("--re", type=float, required=True)
    p.add_argument("--im", type=float, default=0.0)
    _add_specfun_flags(p)

    p = sub.add_parser("spectrum", help="coupling constants from a zero table")
    p.add_argument("--zeros", required=True, help="zero table CSV")
    p.add_argument("--out", help="spectrum CSV path; stdout if omitted")

    p = sub.add_parser("scatter", help="numeric vs analytic phase shift for V = lambda / r^2")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--sweep", action="store_true", help="repeat over k spanning one decade around --k")
    p.add_argument("--ode-tol", type=float, default=1e-10)
    p.add_argument("--no-richardson", action="store_true")
    p.add_argument("--out", help="TSV path; stdout if omitted")

    p = sub.add_parser("verify", help="run the check registry")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--check", action="append", metavar="ID", help="check id (repeatable)")
    p.add_argument("--list", action="store_true", help="list check ids and exit")
    p.add_argument("--strict", action="store_true", help="exit 1 if any check is refuted")
    p.add_argument("--json", dest="json_path")
    p.add_argument("--md", dest="md_path")
    p.add_argument("--tol", action="append", type=_tol_pair, default=[], metavar="ID=V")
    p.add_argument("--jobs", type=int, default=1)
    _add_specfun_flags(p)

    p = sub.add_parser("plot", help="write TSV data for plotting")
    p.add_argument("--kind", choices=PLOT_KINDS, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=50.0)
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--zeros", help="zero table CSV for --kind spectrum")
    p.add_argument("--lam-min", type=float, default=0.1)
    p.add_argument("--lam-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=41)
    return parser


def cmd_zeros(args) -> int:
    try:
        cfg = ScanConfig(args.t_min, args.t_max, args.step, args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    zeros = find_zeros(cfg, max(1, args.jobs), args.method, _specfun(args))
    if args.out is None:
        print("n,t,bracket_lo,bracket_hi,residual")
        for z in zeros:
            print(f"{z.n},{z.t:.17g},{z.bracket_lo:.17g},{z.bracket_hi:.17g},{z.residual:.17g}")
    elif args.out.endswith(".json"):
        write_zero_table_json(args.out, zeros)
    else:
        write_zero_table(args.out, zeros)
    print(f"{len(zeros)} zeros on [{args.t_min:g}, {args.t_max:g}]", file=sys.stderr)
    return EXIT_OK


def cmd_xi(args) -> int:
    v = xi(complex(args.re, args.im), _specfun(args))
    print(f"{v.real:.17g}\t{v.imag:.17g}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    couplings = spectrum(read_zero_table(args.zeros))
    if args.out:
        write_spectrum(args.out, couplings)
    else:
        print("n,t,lambda,im_residual")
        for c in couplings:
            print(f"{c.n},{c.source_t:.17g},{c.lam:.17g},{c.im_residual:.17g}")
    return EXIT_OK


def cmd_scatter(args) -> int:
    if not args.k > 0:
        raise UsageError("--k must be positive")
    ks = [args.k * 10.0 ** (i / 6.0 - 0.5) for i in range(7)] if args.sweep else [args.k]
    results = [
        phase_shift_numeric(args.lam, k, RadialSolverConfig.for_wavenumber(k, args.ode_tol, not args.no_richardson))
        for k in ks
    ]
    comment = f"lambda={args.lam:g} ode_tol={args.ode_tol:g} richardson={not args.no_richardson}"
    if args.out:
        write_phase_tsv(args.out, results, comment)
    else:
        print("# " + comment)
        print("\t".join(TSV_COLUMNS))
        for r in results:
            print(r.tsv_row())
    if args.sweep:
        spread = max(s_distance(a.delta_numeric, b.delta_numeric) for a in results for b in results)
        print(f"energy-independence spread (S-matrix metric): {spread:.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.list:
        print("\n".join(check_ids()))
        return EXIT_OK
    selection = "all" if args.all or not args.check else args.check
    report = run_suite(selection, dict(args.tol), max(1, args.jobs), _specfun(args))
    if args.json_path:
        emit_report(report, "json", args.json_path)
    if args.md_path:
        emit_report(report, "markdown", args.md_path)
    for r in report.results:
        label = r.check_id + (f" [{r.case}]" if r.case else "")
        err = "" if r.abs_err is None else f"  abs_err={r.abs_err:.3e}"
        print(f"{r.verdict:<15} {label}{err}")
    s = report.summary
    print(f"summary: {s['CONFIRMED']} confirmed, {s['REFUTED']} refuted, {s['NOT_APPLICABLE']} not applicable")
    if args.strict and s[REFUTED] > 0:
        return EXIT_REFUTED
    return EXIT_OK


def cmd_plot(args) -> int:
    zeros = read_zero_table(args.zeros) if args.zeros else None
    n = emit_plot_data(
        args.kind, args.out, t_min=args.t_min, t_max=args.t_max, step=args.step, zeros=zeros,
        lam_min=args.lam_min, lam_max=args.lam_max, points=args.points,
    )
    print(f"{n} rows -> {args.out}", file=sys.stderr)
    return EXIT_OK


COMMANDS = {
    "zeros": cmd_zeros,
    "xi": cmd_xi,
    "spectrum": cmd_spectrum,
    "scatter": cmd_scatter,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"xilab: usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (XilabError, OSError, ValueError, ArithmeticError) as exc:
        print(f"xilab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
