"""The ten end-to-end checks, shared by ``paraborch verify`` and the test suite."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .borcherds import divisor_mult, expand, first_fj, product_data
from .jacobi import block_spec, index_formula, linear_forms, norm_scan, pullback, theta_block
from .lattice import short_vectors_array
from .paramodular import build, cusp_test, eta_identity_check, lattice_form, reproduce_tables
from .weil import CASES, combined_multiplier, get_case, multiplier_numeric_check


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s, limit {self.limit:g}s)"


def _timed(number, name, limit, fn):
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported with its cause
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        ok, detail = False, f"{detail}; exceeded time limit"
    return CheckResult(number, name, ok, detail, elapsed, limit)


def check_eta_identity():
    rep = eta_identity_check(21)
    head = [rep.eta_side.coefficient(e) for e in range(7)]
    ok = rep.equal and head == [1, 0, 0, 14, 0, 42, 70]
    return ok, f"equal through q^20: {rep.equal}; first coefficients {head}"


def _lift_shape(name):
    case = get_case(name)
    psi = lattice_form(case, 1)
    lat = case.lattice.dual()
    zero = [0] * case.rank
    pole, const = psi.coefficient(-1, zero), psi.coefficient(0, zero)
    xs, norms, scale = short_vectors_array(lat, 4, include_zero=True)
    vals = psi.coefficients_batch(0, xs, norms, scale).tolist()
    minimal = Fraction(2, case.p) * scale
    on_min = [v for v, m in zip(vals, norms.tolist()) if m == minimal]
    others = [v for v, m, x in zip(vals, norms.tolist(), xs.tolist()) if m != minimal and any(x)]
    n_roots = len(case.roots.positive_root_coords) * 2
    ok = (pole == 1 and const == case.expected_f00 and len(on_min) == n_roots
          and all(v == 1 for v in on_min) and not any(others))
    return ok, f"{name}: pole {pole}, constant {const}, {len(on_min)} minimal vectors with value 1, {sum(1 for v in others if v)} stray"


def check_lift_shape():
    results = [_lift_shape(n) for n in ("A6_7", "2A4_5")]
    return all(r[0] for r in results), "; ".join(r[1] for r in results)


def check_multiplier():
    parts = []
    ok = True
    for case in CASES.values():
        exact = combined_multiplier(case)
        dev = multiplier_numeric_check(case)
        ok &= exact == 1 and dev < 1e-12
        parts.append(f"{case.name}: exact {exact}, numeric deviation {dev:.1e}")
    return ok, "; ".join(parts)


NAMED_VECTORS = {
    98: (1, 1, 1, 1, 1, 1),
    122: (2, 1, 1, 1, 1, 1),
    138: (1, 2, 1, 1, 1, 1),
    146: (1, 1, 2, 1, 1, 1),
    147: (-1, 4, -6, 4, 1, 3),
    152: (-1, 2, 1, 2, -1, 2),
}


def check_index_formula(samples=1000, seed=20260):
    case = get_case("A6_7")
    rng = random.Random(seed)
    for _ in range(samples):
        a = [rng.randint(-9, 9) for _ in range(6)]
        closed = index_formula(a)
        half_squares = linear_forms(case, a).index
        lattice_half = case.lattice.norm(a) / 2
        if not closed == half_squares == lattice_half:
            return False, f"disagreement at a = {a}: {closed}, {half_squares}, {lattice_half}"
    named = {t: index_formula(a) for t, a in NAMED_VECTORS.items()}
    wrong = {t: v for t, v in named.items() if t != v}
    detail = f"{samples} random vectors agree; named vectors give {[named[t] for t in NAMED_VECTORS]}"
    if wrong:
        detail += "; mismatch " + ", ".join(f"expected {t} from {NAMED_VECTORS[t]}, got {v}" for t, v in wrong.items())
    return not wrong, detail


FJ_CASES = [
    ("A6_7", (1, 1, 1, 1, 1, 1), None),
    ("A6_7", (2, 1, 1, 1, 1, 1), None),
    ("A6_7", (1, 2, 1, 1, 1, 1), None),
    ("A6_7", (1, 1, 2, 1, 1, 1), None),
    ("2A4_5", (1, 1, 1, 1), (2, 1, 1, 1)),
    ("2A4_5", (1, 1, 1, 1), (-1, 1, 1, 1)),
]


def check_first_fj(depth=8):
    parts = []
    ok = True
    for name, a, b in FJ_CASES:
        case = get_case(name)
        phi = pullback(lattice_form(case, 1), a, b, qtrunc=1)
        data = product_data(phi)
        top = data.A + depth
        exp = expand(phi, 1, top)
        direct = first_fj(phi, top + 1)
        same = exp.slice(1).series == direct.series.truncate(top + 1)
        ok &= same and not direct.is_zero()
        parts.append(f"t={int(phi.index)}:{'ok' if same else 'DIFF'}")
    return ok, f"m=1 slice vs theta block through q^(A+{depth}): " + ", ".join(parts)


def check_antisymmetry():
    parts = []
    ok = True
    for name, a, b in (("A6_7", (2, 1, 1, 1, 1, 1), None), ("2A4_5", (1, 1, 1, 1), (2, 1, 1, 1))):
        bld = build(name, a, b, 2, 2)
        exp = bld.expansion
        defects = exp.antisymmetry_defects()
        diag = exp.diagonal()
        this = not defects and not any(diag.values()) and bld.data.D % 2 == 1 and exp.antisymmetric
        ok &= this
        parts.append(f"t={exp.t} weight {exp.weight}: {len(defects)} defects, D={bld.data.D}, "
                     f"{len(exp.coeffs)} coefficients")
    return ok, "; ".join(parts)


def check_cusp():
    b98 = build("A6_7", (1, 1, 1, 1, 1, 1), None, 2, 2)
    witnesses = b98.expansion.null_norm_coefficients()
    v98 = cusp_test(b98.expansion)
    b122 = build("A6_7", (2, 1, 1, 1, 1, 1), None, 2, 2)
    v122 = cusp_test(b122.expansion)
    b62 = build("2A4_5", (1, 1, 1, 1), (2, 1, 1, 1), 2, 2)
    v62 = cusp_test(b62.expansion)
    ok = (bool(witnesses) and (2, 28, 1) in witnesses and v98.verdict == "inapplicable"
          and v122.is_cusp and "odd" in v122.reason
          and v62.is_cusp and b62.expansion.coefficient(0, 0, 0) == 0)
    return ok, (f"t=98 null-norm coefficients {witnesses[:4]} (criterion {v98.verdict}); "
                f"t=122 {v122.verdict} ({v122.reason}); t=62 {v62.verdict} ({v62.reason})")


def check_tables():
    from .cli import main as cli_main
    parts = []
    ok = True
    for which in (1, 2, 3, 4):
        rep = reproduce_tables(which)
        code = cli_main(["tables", "--which", str(which), "--quiet"])
        ok &= rep.ok and code == 0
        n_pass = sum(r.ok for r in rep.results)
        parts.append(f"table {which}: {n_pass}/{len(rep.results)} rows, exit {code}")
    return ok, "; ".join(parts)


def check_divisors():
    case = get_case("A6_7")
    psi = lattice_form(case, 3)
    w1 = [6, 5, 4, 3, 2, 1]  # dual coordinates of a minimal vector of the lattice itself
    data = [(-1, [0] * 6), (2, w1)]
    data += [(0, list(c)) for c in case.roots.positive_root_coords]
    data += [(0, [-x for x in c]) for c in case.roots.positive_root_coords]
    mults = [divisor_mult(psi, n, l) for n, l in data]
    ok = all(m == 1 for m in mults)
    return ok, f"{len(mults)} divisor data (norm -2 and -2/7), multiplicities {sorted(set(mults))}"


def check_holomorphy(samples=50, depth=10, seed=4242):
    case = get_case("A6_7")
    rng = random.Random(seed)
    done, worst = 0, None
    while done < samples:
        a = [rng.randint(-9, 9) for _ in range(6)]
        if linear_forms(case, a).n0:
            continue
        spec = block_spec(case, a)
        blk = theta_block(spec, spec.q_order + depth + 1)
        scan = norm_scan(blk)
        if not scan.holomorphic:
            return False, f"negative norm {scan.min_norm} at {scan.witness} for a = {a}"
        worst = scan.min_norm if worst is None else min(worst, scan.min_norm)
        done += 1
    return True, f"{samples} blocks holomorphic through {depth} q-steps past the leading term (min norm {worst})"


CHECKS = [
    (1, "eta identity", 1.0, check_eta_identity),
    (2, "lift shape", 5.0, check_lift_shape),
    (3, "multiplier", 1.0, check_multiplier),
    (4, "index formula", 1.0, check_index_formula),
    (5, "first Fourier-Jacobi", 600.0, check_first_fj),
    (6, "antisymmetry", 600.0, check_antisymmetry),
    (7, "cuspidality", 60.0, check_cusp),
    (8, "tables", 30.0, check_tables),
    (9, "divisor multiplicity", 1.0, check_divisors),
    (10, "holomorphy sampling", 60.0, check_holomorphy),
]


def run_check(number: int) -> CheckResult:
    for num, name, limit, fn in CHECKS:
        if num == number:
            return _timed(num, name, limit, fn)
    raise KeyError(number)


def run_all() -> list:
    return [run_check(num) for num, *_ in CHECKS]
