"""Command line entry point: ``paraborch <command> ...``.

Vectors are comma separated; write negative leading entries as ``--a=-1,4,-6,4,1,3``.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction


def _vec(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _cmd_theta_block(args):
    from .jacobi import block_spec, linear_forms, norm_scan, theta_block
    from .weil import get_case

    case = get_case(args.case)
    lf = linear_forms(case, args.a, args.b)
    spec = block_spec(case, args.a, args.b)
    prec = Fraction(args.prec) if args.prec is not None else spec.q_order + 11
    blk = theta_block(spec, prec)
    scan = norm_scan(blk)
    info = {
        "block": spec.format(),
        "weight": str(spec.weight),
        "index": str(spec.index),
        "n0": lf.n0,
        "q_order": str(spec.q_order),
        "holomorphic": scan.holomorphic,
        "cuspidal": scan.cuspidal,
        "min_norm": None if scan.min_norm is None else str(scan.min_norm),
        "exact_below": str(prec),
    }
    if args.format == "json":
        info["coeffs"] = blk.to_dict()["coeffs"]
        print(json.dumps(info, indent=1))
    else:
        print(f"block    {info['block']}")
        print(f"weight   {info['weight']}  index {info['index']}  n0 {lf.n0}  q-order {info['q_order']}")
        print(f"verdict  {scan.label()}")
    return 0


def _cmd_lift(args):
    from .weil import get_case, lift

    print(lift(get_case(args.case), Fraction(args.prec)).to_json())
    return 0


def _cmd_borcherds(args):
    from .paramodular import build, cusp_test

    bld = build(args.case, args.a, args.b, args.fj_max, args.q_max)
    exp = bld.expansion
    verdict = cusp_test(exp)
    out = {
        "expansion": exp.to_dict(),
        "data": {"A": bld.data.A, "B": bld.data.B, "C": bld.data.C, "weight": str(bld.data.weight),
                 "D": bld.data.D, "antisymmetric": bld.data.antisymmetric},
        "first_block": bld.spec.format(),
        "verdicts": {
            "antisymmetry_defects": len(exp.antisymmetry_defects()),
            "cusp": verdict.verdict,
            "cusp_reason": verdict.reason,
            "null_norm_coefficients": [list(k) for k in exp.null_norm_coefficients()],
        },
    }
    text = json.dumps(out, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}: t={exp.t}, weight {exp.weight}, {len(exp.coeffs)} coefficients, {verdict.verdict}")
    else:
        print(text)
    return 0


def _cmd_tables(args):
    from .paramodular import reproduce_tables

    rep = reproduce_tables(args.which)
    if not args.quiet:
        for line in rep.lines():
            print(line)
        print(f"table {args.which}: {sum(r.ok for r in rep.results)}/{len(rep.results)} rows verified")
    return 0 if rep.ok else 1


def _cmd_verify(args):
    from .acceptance import CHECKS, run_check

    numbers = args.only or [n for n, *_ in CHECKS]
    failed = 0
    for n in numbers:
        res = run_check(n)
        print(res.line(), flush=True)
        failed += not res.passed
    return 1 if failed else 0


def make_parser():
    p = argparse.ArgumentParser(prog="paraborch", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_vectors(sp):
        sp.add_argument("--case", required=True, choices=["A6", "A4A4", "A6_7", "2A4_5"])
        sp.add_argument("--a", required=True, type=_vec)
        sp.add_argument("--b", type=_vec, default=None)

    tb = sub.add_parser("theta-block", help="first Fourier-Jacobi block of a pull-back")
    add_vectors(tb)
    tb.add_argument("--prec", default=None, help="q-exponent bound (default: leading order + 11)")
    tb.add_argument("--format", choices=["text", "json"], default="text")
    tb.set_defaults(func=_cmd_theta_block)

    lf = sub.add_parser("lift", help="vector-valued lift as JSON")
    lf.add_argument("--case", required=True, choices=["A6", "A4A4", "A6_7", "2A4_5"])
    lf.add_argument("--prec", default="2", help="components exact below q^prec")
    lf.set_defaults(func=_cmd_lift)

    bo = sub.add_parser("borcherds", help="truncated paramodular expansion")
    add_vectors(bo)
    bo.add_argument("--fj-max", type=int, default=2)
    bo.add_argument("--q-max", type=int, default=2)
    bo.add_argument("--out", default=None)
    bo.set_defaults(func=_cmd_borcherds)

    ta = sub.add_parser("tables", help="verify the embedded table rows")
    ta.add_argument("--which", type=int, required=True, choices=[1, 2, 3, 4])
    ta.add_argument("--quiet", action="store_true")
    ta.set_defaults(func=_cmd_tables)

    ve = sub.add_parser("verify", help="run the acceptance checks")
    ve.add_argument("--only", type=int, nargs="*", default=None)
    ve.set_defaults(func=_cmd_verify)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    if getattr(args, "b", None) is not None and args.case in ("A6", "A6_7"):
        print("--b only applies to the A4A4 case", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
