"""List levels reached by pull-back vectors in a box, with one block per level.

Example: python3 scripts/scan_levels.py --case A6 --box 3 --max-level 200
"""
import argparse
import itertools

from paraborch.jacobi import block_spec, linear_forms
from paraborch.paramodular import is_squarefree
from paraborch.weil import get_case


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--case", default="A6", choices=["A6", "A4A4"])
    ap.add_argument("--box", type=int, default=3)
    ap.add_argument("--max-level", type=int, default=200)
    ap.add_argument("--allow-zero-forms", action="store_true", help="keep vectors with vanishing forms")
    args = ap.parse_args()
    case = get_case(args.case)
    rng = range(-args.box, args.box + 1)
    seen = {}
    for v in itertools.product(rng, repeat=case.rank):
        a, b = (v, None) if case.rank == 6 else (v[:4], v[4:])
        lf = linear_forms(case, a, b)
        if lf.index > args.max_level or lf.index in seen:
            continue
        if lf.n0 and not args.allow_zero_forms:
            continue
        seen[lf.index] = (v, lf.n0, block_spec(case, a, b))
    for t in sorted(seen):
        v, n0, spec = seen[t]
        flag = "squarefree" if is_squarefree(t) else "          "
        print(f"{t:5d} {flag} weight {spec.weight} n0={n0} {','.join(map(str, v))}: {spec}")


if __name__ == "__main__":
    main()
