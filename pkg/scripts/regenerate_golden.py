"""Rewrite the golden expansion files shipped in paraborch/data."""
import argparse
import json
from pathlib import Path

from paraborch.paramodular import build

GOLDEN = {
    98: ("A6_7", (1, 1, 1, 1, 1, 1)),
    122: ("A6_7", (2, 1, 1, 1, 1, 1)),
}


def render(d):
    # one coefficient per line keeps diffs readable
    head = {k: v for k, v in d.items() if k != "coeffs"}
    lines = [json.dumps(c) for c in d["coeffs"]]
    return json.dumps(head)[:-1] + ', "coeffs": [\n' + ",\n".join(lines) + "\n]}\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--box", type=int, default=3, help="use M = N = box")
    ap.add_argument("--dest", default=str(Path(__file__).resolve().parents[1] / "src/paraborch/data"))
    args = ap.parse_args()
    for t, (case, a) in GOLDEN.items():
        bld = build(case, a, None, args.box, args.box)
        assert bld.t == t
        path = Path(args.dest) / f"golden_t{t}.json"
        path.write_text(render(bld.expansion.to_dict()))
        print(f"{path}: {len(bld.expansion.coeffs)} coefficients")


if __name__ == "__main__":
    main()
