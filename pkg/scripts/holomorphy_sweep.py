"""Sample theta blocks of random pull-back vectors and scan their hyperbolic norms."""
import argparse
import random
import time

from paraborch.jacobi import block_spec, linear_forms, norm_scan, theta_block
from paraborch.weil import get_case


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--depth", type=int, default=12, help="q-steps past the leading term")
    ap.add_argument("--range", type=int, default=9)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    case = get_case("A6")
    rng = random.Random(args.seed)
    start = time.perf_counter()
    done = bad = 0
    while done < args.samples:
        a = [rng.randint(-args.range, args.range) for _ in range(6)]
        if linear_forms(case, a).n0:
            continue
        spec = block_spec(case, a)
        scan = norm_scan(theta_block(spec, spec.q_order + args.depth + 1))
        done += 1
        if not scan.holomorphic:
            bad += 1
            print(f"a={a}: min norm {scan.min_norm} at {scan.witness}")
    print(f"{done} blocks, {bad} with negative norm, {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
