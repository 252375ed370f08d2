"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 verification
failure. Outputs carry no timestamps, so identical invocations produce
identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path

from . import __version__
from .bounds import bound_curve, seminorm_endpoint, seminorm_interior
from .errors import DomainError, FracLegendreError, NumericalError
from .functions import (
    AbsPower,
    AbsX,
    EndpointPower,
    InteriorPlusPower,
    Modulator,
    RegularityProfile,
    smooth,
)
from .harness import (
    convergence_table,
    decay_table,
    figure1_data,
    tightness_profile,
    write_figure1,
    write_profile,
    write_table1,
    write_table2,
    write_table3,
)
from .legexp import DEFAULT_TOL, expand

__all__ = ["main", "build_parser", "build_model", "EXIT_OK", "EXIT_USAGE", "EXIT_NUMERICAL", "EXIT_VERIFY"]

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_VERIFY = 0, 1, 2, 3

MODELS = ("abs-power", "abs-x", "interior-plus-power", "endpoint-power", "smooth")
MODULATORS = ("one", "sin", "cos", "exp")
# CLI spelling of the bound kinds
BOUND_KINDS = {
    "linf-interior": "linf_interior",
    "weighted-linf-interior": "weighted_linf_interior",
    "l2-interior": "l2_interior",
    "linf-endpoint": "linf_endpoint",
    "l2-endpoint": "l2_endpoint",
    "absx-zero": "absx_at_zero",
    "absx-pm1": "absx_at_pm1",
    "coeff-decay": "coeff_decay",
}


class UsageError(Exception):
    """Invalid command-line input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty degree list")
    return out


def build_model(name, mu=None, theta=None, modulator=None):
    """Function selected by ``--model`` and its parameters."""

    def need_mu():
        if mu is None:
            raise UsageError(f"--mu is required for model {name}")
        return mu

    if name == "abs-power":
        return AbsPower(need_mu())
    if name == "abs-x":
        return AbsX()
    if name == "interior-plus-power":
        if theta is None:
            raise UsageError("--theta is required for model interior-plus-power")
        return InteriorPlusPower(theta, need_mu())
    if name == "endpoint-power":
        return EndpointPower(need_mu(), Modulator(modulator or "one"))
    if name == "smooth":
        return smooth(modulator or "exp")
    raise UsageError(f"unknown model {name!r}; choose from {', '.join(MODELS)}")


def _profile(u, m):
    if isinstance(u, EndpointPower):
        return RegularityProfile.for_order(u.mu, location="left-endpoint", m=m,
                                           seminorm=seminorm_endpoint(u, m=m))
    if isinstance(u, (AbsPower, InteriorPlusPower)):
        loc = getattr(u, "theta", 0.0)
        return RegularityProfile.for_order(u.mu, location=loc, seminorm=seminorm_interior(u))
    raise UsageError("bounds need a model with a singularity of known order")


def _meta(args):
    return {"version": __version__, "command": args.command,
            "tolerances": {"quadrature": args.tol}}


def _parse_cell(text):
    if text == "":
        return None
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def _render(csv_text, fmt, meta):
    if fmt == "csv":
        return csv_text
    rows = list(csv.reader(io.StringIO(csv_text)))
    header, body = rows[0], rows[1:]
    doc = {"meta": meta, "columns": header,
           "rows": [dict(zip(header, map(_parse_cell, r))) for r in body]}
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _emit(writer, args, path=None):
    buf = io.StringIO()
    writer(buf)
    text = _render(buf.getvalue(), args.format, _meta(args))
    target = path if path is not None else args.output
    if target is None or str(target) == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text)


def _suffixed(name, fmt):
    return f"{name}.{fmt}"


# ------------------------------------------------------------------ commands


def _cmd_expand(args):
    u = build_model(args.model, args.mu, args.theta, args.modulator)
    s = expand(u, args.degree, strategy=args.strategy, tol=args.tol, workers=args.workers)
    _emit(s.to_csv, args)


def _cmd_bounds(args):
    kind = BOUND_KINDS[args.kind]
    if kind.startswith("absx"):
        profile = RegularityProfile(1, 1.0, 0.0, seminorm=2.0)
    else:
        if args.model is None:
            raise UsageError(f"--model is required for bound kind {args.kind}")
        u = build_model(args.model, args.mu, args.theta, args.modulator)
        if kind.endswith("endpoint") != isinstance(u, EndpointPower):
            raise UsageError(f"bound kind {args.kind} does not apply to model {args.model}")
        profile = _profile(u, args.m)
    curve = bound_curve(kind, profile, args.degree)
    _emit(curve.to_csv, args)


def _cmd_convergence(args):
    u = build_model(args.model, args.mu, args.theta, args.modulator)
    layout = args.layout or ("table3" if isinstance(u, EndpointPower) else "table1")
    norms = ("linf", "weighted_linf") if layout == "table1" else ("linf", "l2")
    t = convergence_table(u, args.n, norms, tol=args.tol, workers=args.workers)
    writer = write_table1 if layout == "table1" else write_table3
    _emit(lambda s: writer(s, [t]), args)


def _cmd_decay(args):
    u = build_model(args.model, args.mu, args.theta, args.modulator)
    t = decay_table(u, args.n, tol=args.tol, workers=args.workers)
    _emit(lambda s: write_table2(s, [t]), args)


def _tightness_csv(rows):
    def write(stream):
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["N", "error_at_0", "bound_at_0", "error_at_pm1", "bound_at_pm1", "argmax"])
        for r in rows:
            w.writerow([r.N, repr(float(r.error_at_0)), repr(float(r.bound_at_0)),
                        repr(float(r.error_at_pm1)), repr(float(r.bound_at_pm1)),
                        repr(float(r.argmax_location))])
    return write


def _cmd_tightness(args):
    if min(args.degree) <= 2:
        raise UsageError("N > 2 required for the pointwise bounds of |x|")
    rows = tightness_profile(args.degree, keep_profile=args.profile_dir is not None)
    _emit(_tightness_csv(rows), args)
    if args.profile_dir is not None:
        out = Path(args.profile_dir)
        out.mkdir(parents=True, exist_ok=True)
        for r in rows:
            _emit(lambda s, r=r: write_profile(s, r), args,
                  out / _suffixed(f"fig2_profile_N{r.N}", args.format))


def _cmd_figures(args):
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    fmt = args.format
    for n in args.fig1_n:
        data = figure1_data(n)
        _emit(lambda s, d=data: write_figure1(s, d), args, out / _suffixed(f"fig1_n{n}", fmt))
    if min(args.degree) <= 2:
        raise UsageError("N > 2 required for the pointwise bounds of |x|")
    rows = tightness_profile(args.degree, keep_profile=True)
    for r in rows:
        _emit(lambda s, r=r: write_profile(s, r), args, out / _suffixed(f"fig2_profile_N{r.N}", fmt))
    _emit(_tightness_csv(rows), args, out / _suffixed("fig2_tightness", fmt))
    if args.skip_tables:
        return
    degrees = [8, 16, 32, 64, 128, 256]
    t1 = [convergence_table(AbsPower(mu), degrees, ("linf", "weighted_linf"), tol=args.tol,
                            workers=args.workers) for mu in (1.7, 2.6)]
    _emit(lambda s: write_table1(s, t1), args, out / _suffixed("table1", fmt))
    t2 = [decay_table(EndpointPower(mu, Modulator("sin")), degrees[:-1], tol=args.tol,
                      workers=args.workers) for mu in (0.1, 1.2, 2.6)]
    _emit(lambda s: write_table2(s, t2), args, out / _suffixed("table2", fmt))
    t3 = [convergence_table(EndpointPower(mu), degrees, ("linf", "l2"), tol=args.tol,
                            workers=args.workers) for mu in (0.1, 1.2)]
    _emit(lambda s: write_table3(s, t3), args, out / _suffixed("table3", fmt))


def _cmd_verify(args):
    from . import verify

    if args.list:
        for name, (module, _) in verify.CHECKS.items():
            print(f"{module}\t{name}")
        return EXIT_OK
    unknown = [s for s in args.select or () if s not in verify.CHECKS
               and s not in {m for m, _ in verify.CHECKS.values()}]
    if unknown:
        raise UsageError(f"unknown check or module: {', '.join(unknown)}")

    def show(r):
        if not args.quiet:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.module:9s} {r.name:32s} {r.detail}", flush=True)

    results = verify.run(args.select, show)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)} passed, {len(failed)} failed")
    return EXIT_VERIFY if failed else EXIT_OK


# -------------------------------------------------------------------- parser


def _add_model(p, required=True):
    g = p.add_argument_group("function")
    g.add_argument("--model", choices=MODELS, required=required,
                   help="function family: |x|^mu, |x|, (x-theta)_+^mu, (1+x)^mu g(x) or a smooth g(x)")
    g.add_argument("--mu", type=float, help="singularity exponent")
    g.add_argument("--theta", type=float, help="interior singular point in (-1, 1)")
    g.add_argument("--modulator", choices=MODULATORS,
                   help="smooth factor g (default: one for endpoint-power, exp for smooth)")


def _add_output(p, path=True):
    if path:
        p.add_argument("-o", "--output", help="output file (default: standard output)")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="csv, or json with a meta block of tolerances and version")


def _add_numeric(p):
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative quadrature tolerance")
    p.add_argument("--workers", type=int, default=1, help="threads for independent rows")


def build_parser():
    """Argument parser of the ``fraclegendre`` command."""
    p = _Parser(prog="fraclegendre", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command", parser_class=_Parser)

    e = sub.add_parser("expand", help="Legendre coefficients u_0..u_N")
    _add_model(e)
    e.add_argument("--degree", type=int, required=True, help="truncation degree N")
    e.add_argument("--strategy", choices=("closed-form-preferred", "quadrature-only"),
                   default="closed-form-preferred", help="coefficient route")
    _add_numeric(e)
    _add_output(e)
    e.set_defaults(func=_cmd_expand)

    b = sub.add_parser("bounds", help="a-priori error and coefficient bounds")
    b.add_argument("--kind", choices=tuple(BOUND_KINDS), required=True, help="which bound")
    _add_model(b, required=False)
    b.add_argument("--degree", type=_int_list, required=True, help="N or comma-separated N list")
    b.add_argument("--m", type=int, default=0, help="extra endpoint smoothness for endpoint bounds")
    _add_numeric(b)
    _add_output(b)
    b.set_defaults(func=_cmd_bounds)

    c = sub.add_parser("convergence", help="measured errors and orders over doubling N")
    _add_model(c)
    c.add_argument("--n", type=_int_list, required=True, help="comma-separated doubling degrees")
    c.add_argument("--layout", choices=("table1", "table3"),
                   help="columns linf,wlinf or linf,l2 (default: table3 for endpoint-power)")
    _add_numeric(c)
    _add_output(c)
    c.set_defaults(func=_cmd_convergence)

    d = sub.add_parser("decay", help="|u_n| and decay orders over doubling n")
    _add_model(d)
    d.add_argument("--n", type=_int_list, required=True, help="comma-separated doubling degrees")
    _add_numeric(d)
    _add_output(d)
    d.set_defaults(func=_cmd_decay)

    t = sub.add_parser("tightness", help="pointwise errors of the |x| expansion against their bounds")
    t.add_argument("--degree", type=_int_list, default=[4, 8, 16, 32, 64, 128], help="N list, N > 2")
    t.add_argument("--profile-dir", help="also write fig2_profile_N<k> error curves here")
    _add_numeric(t)
    _add_output(t)
    t.set_defaults(func=_cmd_tightness)

    f = sub.add_parser("figures", help="write all table and figure data files")
    f.add_argument("--outdir", default=".", help="directory for the output files")
    f.add_argument("--fig1-n", type=_int_list, default=[100], help="Legendre degrees of the first figure")
    f.add_argument("--degree", type=_int_list, default=[4, 8, 16, 32, 64, 128],
                   help="N list of the error profiles")
    f.add_argument("--skip-tables", action="store_true", help="write only the figure files")
    _add_numeric(f)
    _add_output(f, path=False)
    f.set_defaults(func=_cmd_figures)

    v = sub.add_parser("verify", help="run the invariant suite")
    v.add_argument("--select", nargs="+", metavar="NAME", help="check names or module names")
    v.add_argument("--list", action="store_true", help="list checks and exit")
    v.add_argument("--quiet", action="store_true", help="print only the summary")
    v.set_defaults(func=_cmd_verify, tol=DEFAULT_TOL)
    return p


def main(argv=None):
    """Entry point; returns the exit status."""
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("fraclegendre: error: --workers must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "tol", DEFAULT_TOL) <= 0 or not math.isfinite(args.tol):
        print("fraclegendre: error: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        status = args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"fraclegendre: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, FracLegendreError) as exc:
        print(f"fraclegendre: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK if status is None else status


if __name__ == "__main__":
    sys.exit(main())
