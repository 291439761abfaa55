"""Command-line interface: ``eulerlab {eval,param,reduce,conjecture,verify}``.

Exit codes: 0 success / all cases pass, 1 an identity check failed, 2 usage
or parse error, 3 requested precision not reachable.
"""

from __future__ import annotations

import argparse
import sys

from .errors import CapExceeded, DomainError, EulerLabError, PrecisionLossError
from .numerics import PrecisionContext
from . import conjecture as conj
from . import harness
from . import mzv as Z
from . import parametric as P
from . import reduction as R

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3

IDENTITIES = ("eu-dual", "z-gen", "zetas1", "s-suite", "sumg", "log", "gf2", "sigma", "thm2",
              "gf2-3", "fixed-b", "cot")


def _ctx(args) -> PrecisionContext:
    return PrecisionContext.from_env(digits=args.digits)


def _line(mp, label, v, digits):
    print(f"{label:10s} {mp.nstr(v, digits)}")


def _print_pair(mp, pair, digits):
    _line(mp, "lhs", pair.lhs.value, digits)
    _line(mp, "rhs", pair.rhs.value, digits)
    print(f"{'residual':10s} {mp.nstr(pair.residual, 3)}")
    print(f"{'bound':10s} {mp.nstr(pair.bound, 3)}")


def cmd_eval(args) -> int:
    ctx = _ctx(args)
    idx = Z.MZVIndex.parse(args.mzv)
    v = Z.mzv_eval(idx, ctx)
    mp = ctx.mp
    print(f"zeta({idx}) = {mp.nstr(v.value, args.digits)}")
    print(f"bound {mp.nstr(v.error_bound, 3)}  method {v.method}  terms {v.terms_used}")
    return EXIT_OK


def cmd_param(args) -> int:
    ctx = _ctx(args)
    mp = ctx.mp
    need_y = args.identity in ("gf2", "sigma", "thm2", "gf2-3")
    if args.identity == "gf2-3":
        if args.y is None:
            raise DomainError("--y is required")
    elif args.x is None or (need_y and args.y is None):
        raise DomainError("--x" + (" and --y are" if need_y else " is") + " required")
    ident = args.identity
    if ident == "eu-dual":
        _print_pair(mp, P.eu_dual_sides(args.x, ctx), args.digits)
    elif ident == "z-gen":
        _print_pair(mp, P.z_gen(args.x, ctx), args.digits)
    elif ident == "zetas1":
        _print_pair(mp, P.zetas1_gf_sides(args.x, ctx), args.digits)
    elif ident == "s-suite":
        s = P.s_suite(args.x, ctx)
        for k, v in s.sums.items():
            _line(mp, k, v.value, args.digits)
        print(f"{'defect':10s} {mp.nstr(s.residual, 3)}")
        print(f"{'bound':10s} {mp.nstr(s.bound, 3)}")
    elif ident == "sumg":
        _print_pair(mp, P.sum_formula_sides(args.r, args.x, ctx), args.digits)
    elif ident == "log":
        _print_pair(mp, P.log_identity_sides(args.x, ctx), args.digits)
    elif ident == "gf2":
        _print_pair(mp, P.gf2_sides(args.x, args.y, ctx, limit=args.limit), args.digits)
    elif ident == "sigma":
        rec = P.sigma_closed(args.x, args.y, ctx, limit=args.limit)
        for k, (a, b, r) in enumerate(zip(rec.closed_forms, rec.series_terms, rec.residuals), 1):
            print(f"sigma{k}  closed {mp.nstr(a.value, args.digits)}  series {mp.nstr(b.value, args.digits)}"
                  f"  residual {mp.nstr(r, 3)}")
    elif ident == "thm2":
        _print_pair(mp, P.thm2_sides(args.x, args.y, ctx, limit=args.limit), args.digits)
    elif ident == "gf2-3":
        _print_pair(mp, P.gf2_3_sides(args.y, ctx, limit=args.limit), args.digits)
    elif ident == "fixed-b":
        _print_pair(mp, P.fixed_b_gf_sides(args.x, args.t, ctx), args.digits)
    elif ident == "cot":
        _print_pair(mp, P.cot_expansion_sides(args.x, ctx), args.digits)
    return EXIT_OK


def cmd_reduce(args) -> int:
    ctx = _ctx(args)
    mp = ctx.mp
    try:
        a, b = (int(v) for v in args.pair.split(","))
    except ValueError:
        raise DomainError(f"--pair expects two integers, got {args.pair!r}")
    if b == 1 and a >= 2:
        expr = R.reduce_s1(a)
    elif a % 2 == 0:
        expr = R.reduce_even_odd(a, b)
    else:
        expr = R.reduce_swap(a, b)
    print(f"zeta({a},{b}) = {R.render(expr)}")
    sym = R.expr_eval(expr, ctx)
    num = Z.mzv_eval(Z.MZVIndex.of(a, b), ctx)
    print(f"symbolic  {mp.nstr(sym.value, args.digits)}")
    print(f"numeric   {mp.nstr(num.value, args.digits)}")
    resid = abs(sym.value - num.value)
    bound = sym.error_bound + num.error_bound
    print(f"residual  {mp.nstr(resid, 3)}  bound {mp.nstr(bound, 3)}")
    return EXIT_OK if resid <= max(bound, mp.mpf(10) ** (-(args.digits - 5))) else EXIT_FAIL


def cmd_conjecture(args) -> int:
    ctx = _ctx(args)
    ns = [int(v) for v in args.n.split(",")]
    ts = [v.strip() for v in args.t.split(",")]
    rows = conj.gap_table(ts, ns, ctx)
    text = conj.gap_csv(rows, ctx, digits=args.digits)
    sys.stdout.write(text)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = harness.run_suite(args.suite, args.digits, args.seed, args.jobs)
    text = harness.render_report(report, "text")
    sys.stdout.write(text.decode())
    if args.json:
        with open(args.json, "wb") as fh:
            fh.write(harness.render_report(report, "json"))
    if args.csv:
        with open(args.csv, "wb") as fh:
            fh.write(harness.render_report(report, "csv"))
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eulerlab", description="Numerical verification of Euler-sum identities.")
    sub = p.add_subparsers(dest="command", required=True)

    def digits(sp, default=30):
        sp.add_argument("--digits", type=int, default=default, help="target decimal digits")

    e = sub.add_parser("eval", help="evaluate a multiple zeta value")
    e.add_argument("--mzv", required=True, help='index such as "3,1" or "2~,1" (~ marks an alternating slot)')
    digits(e)
    e.set_defaults(func=cmd_eval)

    pa = sub.add_parser("param", help="evaluate both sides of a parametric identity")
    pa.add_argument("--identity", required=True, choices=IDENTITIES)
    pa.add_argument("--x", help='parameter, e.g. "1/3" or "0.5+0.25i"')
    pa.add_argument("--y", help="second parameter")
    pa.add_argument("--r", type=int, default=2, help="depth for sumg")
    pa.add_argument("--t", type=int, default=0, help="b = 2t+1 for fixed-b")
    pa.add_argument("--limit", action="store_true", help="take the limit at removable singularities")
    digits(pa)
    pa.set_defaults(func=cmd_param)

    r = sub.add_parser("reduce", help="reduce a double Euler sum to single zeta values")
    r.add_argument("--pair", required=True, help="a,b")
    digits(r)
    r.set_defaults(func=cmd_reduce)

    c = sub.add_parser("conjecture", help="gap table for the polynomial recurrence")
    c.add_argument("--t", required=True, help="comma-separated t values")
    c.add_argument("--n", default="10,100,1000", help="comma-separated n values")
    c.add_argument("--csv", help="also write the table to this file")
    digits(c, 15)
    c.set_defaults(func=cmd_conjecture)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", default="core", choices=("core", "parametric", "mzv", "reduction", "conjecture", "all"))
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--json", help="write the JSON report here")
    v.add_argument("--csv", help="write the CSV report here")
    digits(v)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.digits < 5:
        parser.error("--digits must be at least 5")
    if args.command == "verify" and args.digits < 10:
        parser.error("verify needs --digits >= 10")
    try:
        return args.func(args)
    except (PrecisionLossError, CapExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (EulerLabError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
