"""Command-line driver: ``qmperiods {coeff,intersect,verify,series}``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .exact import fmt_rational
from .hypergeom import B_coeff_conv, B_coeff_jet, w_closed_form
from .residue import IntegrandError, intersection_number
from .series import (
    QSeries,
    XQSeries,
    gw_gen_function,
    i_function,
    invert_mirror_map,
    mirror_map,
    to_json,
    virtual_gen_function,
    w_series,
    W_series,
)
from .verify import SUITES, plan, run


def _q_text(s: QSeries) -> str:
    return _xq_text(XQSeries.from_q(s))


def _xq_text(s: XQSeries, xname: str = "x", qname: str = "q") -> str:
    parts = []
    for (d, m), c in sorted(s.coeffs.items()):
        mono = []
        if m:
            mono.append(xname if m == 1 else f"{xname}^{m}")
        if d:
            mono.append(qname if d == 1 else f"{qname}^{d}")
        coef = fmt_rational(c)
        if not mono:
            parts.append(coef)
        elif c == 1:
            parts.append("*".join(mono))
        else:
            parts.append(f"({coef})*" + "*".join(mono) if "/" in coef or c < 0 else coef + "*" + "*".join(mono))
    return " + ".join(parts) if parts else "0"


def cmd_coeff(args) -> int:
    rmax = args.rmax
    jet = B_coeff_jet(args.N, args.d, rmax)
    values = jet
    ok = True
    if args.method == "conv" or args.check:
        if args.d < 1:
            conv = jet
        else:
            conv = B_coeff_conv(args.N, args.d, rmax)
        if args.method == "conv":
            values = conv
        if args.check:
            ok = conv == jet
    if args.json:
        out = {"N": args.N, "d": args.d, "B": [fmt_rational(b) for b in values]}
        if args.check:
            out["check"] = ok
        print(json.dumps(out, sort_keys=True))
    else:
        for r, b in enumerate(values):
            print(f"B_{r} = {fmt_rational(b)}")
        if args.check:
            print("jet == conv" if ok else "MISMATCH between jet and conv")
    return 0 if ok else 1


def cmd_intersect(args) -> int:
    try:
        value = intersection_number(args.N, args.d, args.a, args.b, args.j)
    except IntegrandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ok = True
    oracle = None
    if args.oracle:
        if args.b != -1 or args.a != args.N - 2 - args.j:
            print("error: --oracle needs a = N-2-j and b = -1", file=sys.stderr)
            return 2
        oracle = w_closed_form(args.N, args.d, args.j)
        ok = oracle == value
    if args.json:
        out = {"N": args.N, "d": args.d, "a": args.a, "b": args.b, "j": args.j,
               "value": fmt_rational(value)}
        if oracle is not None:
            out["oracle"] = fmt_rational(oracle)
            out["check"] = ok
        print(json.dumps(out, sort_keys=True))
    else:
        print(fmt_rational(value))
        if oracle is not None and not ok:
            print(f"MISMATCH: closed form gives {fmt_rational(oracle)}", file=sys.stderr)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    cells = plan(args.suite, args.N, args.dmax, args.nmax)
    report = run(cells, args.jobs)
    text = report.to_json(timings=not args.no_timings) if args.json else report.to_text()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report.ok else 1


def cmd_series(args) -> int:
    N, dmax = args.N, args.dmax
    try:
        if args.what == "w":
            s = w_series(N, args.i, dmax)
            text = _q_text(s)
        elif args.what == "W":
            s = W_series(N, args.j, dmax)
            text = _xq_text(s)
        elif args.what == "mirror":
            s = mirror_map(N, dmax)
            text = _q_text(s)
        elif args.what == "inverse":
            s = invert_mirror_map(N, dmax)
            text = _xq_text(XQSeries.from_q(s), qname="Q")
        elif args.what == "virtual":
            a, b = _ab(args)
            s = virtual_gen_function(N, a, b, dmax)
            text = _xq_text(s)
        elif args.what == "gw":
            a, b = _ab(args)
            s = gw_gen_function(N, a, b, dmax)
            text = _xq_text(s, xname="t", qname="Q")
        elif args.what == "ifunction":
            s = i_function(N, dmax)
            text = "\n".join(f"P^{j}: {_xq_text(c)}" for j, c in enumerate(s.components))
        else:  # pragma: no cover - argparse restricts choices
            raise ValueError(args.what)
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(to_json(s) if args.json else text)
    return 0


def _ab(args):
    a = args.a if args.a is not None else args.N - 3
    b = args.b if args.b is not None else args.N - 3 - a
    return a, b


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qmperiods", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeff", help="hypergeometric coefficients B_r(N, d)")
    c.add_argument("-N", type=int, required=True)
    c.add_argument("-d", type=int, required=True)
    c.add_argument("-r", "-rmax", dest="rmax", type=int, default=0)
    c.add_argument("--method", choices=("jet", "conv"), default="jet")
    c.add_argument("--check", action="store_true", help="compare jet and convolution results")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_coeff)

    i = sub.add_parser("intersect", help="intersection number from the residue formula")
    i.add_argument("-N", type=int, required=True)
    i.add_argument("-d", type=int, required=True)
    i.add_argument("-a", type=int, required=True)
    i.add_argument("-b", type=int, required=True)
    i.add_argument("-j", type=int, default=0)
    i.add_argument("--oracle", action="store_true", help="cross-check against the closed form")
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_intersect)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("-N", type=int, default=None, help="restrict to one N")
    v.add_argument("-dmax", "--dmax", dest="dmax", type=int, default=None)
    v.add_argument("--nmax", type=int, default=6)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--json", action="store_true")
    v.add_argument("--no-timings", action="store_true", help="omit elapsed times (byte-stable output)")
    v.add_argument("-o", "--output", default=None)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("series", help="emit a series")
    s.add_argument("what", choices=("w", "W", "mirror", "inverse", "virtual", "gw", "ifunction"))
    s.add_argument("-N", type=int, required=True)
    s.add_argument("-dmax", "--dmax", dest="dmax", type=int, default=3)
    s.add_argument("-i", type=int, default=0)
    s.add_argument("-j", type=int, default=0)
    s.add_argument("-a", type=int, default=None)
    s.add_argument("-b", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_series)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
