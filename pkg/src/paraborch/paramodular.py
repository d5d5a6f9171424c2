"""Assembly of the paramodular products, cusp verdicts and table reproduction."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .borcherds import (BorcherdsData, ParamodularExpansion, expand, first_fj, first_fj_spec, product_data,
                        required_qtrunc)
from .jacobi import EZJacobiForm, ThetaBlockSpec, index_formula, linear_forms, pullback
from .lattice import a6_dual_7, theta_series
from .series import PuiseuxSeries, eta_quotient
from .weil import LatticeJacobiForm, LiftCase, get_case, lift

__all__ = [
    "lattice_form",
    "Build",
    "build",
    "CuspVerdict",
    "cusp_test",
    "is_squarefree",
    "TableRow",
    "RowResult",
    "TableReport",
    "load_tables",
    "verify_row",
    "reproduce_tables",
    "EtaIdentityReport",
    "eta_identity_check",
]


@lru_cache(maxsize=None)
def _lattice_form(name: str, prec: int) -> LatticeJacobiForm:
    return LatticeJacobiForm(lift(get_case(name), prec))


def lattice_form(case, prec: int = 1) -> LatticeJacobiForm:
    """Cached lattice Jacobi form of a case, exact for ``n < prec``."""
    name = case.name if isinstance(case, LiftCase) else get_case(case).name
    return _lattice_form(name, max(int(prec), 1))


@dataclass
class Build:
    case: LiftCase
    a: tuple
    b: tuple | None
    phi: EZJacobiForm
    data: BorcherdsData
    block: EZJacobiForm
    spec: ThetaBlockSpec
    expansion: ParamodularExpansion

    @property
    def t(self) -> int:
        return self.expansion.t


def build(case, a, b=None, M: int = 2, N: int = 2, fj_prec=None) -> Build:
    """Pull back, take the Borcherds product and expand it on the box ``(M, N)``."""
    case = case if isinstance(case, LiftCase) else get_case(case)
    a = tuple(int(x) for x in a)
    b = None if b is None else tuple(int(x) for x in b)
    head = pullback(lattice_form(case, 1), a, b, qtrunc=1)
    data = product_data(head)
    need = required_qtrunc(data.A, M, N)
    phi = head if need <= 1 else pullback(lattice_form(case, need), a, b, qtrunc=need)
    spec = first_fj_spec(phi)
    block = first_fj(phi, N + 1 if fj_prec is None else fj_prec)
    expansion = expand(phi, M, N)
    return Build(case, a, b, phi, data, block, spec, expansion)


def is_squarefree(n: int) -> bool:
    n = abs(int(n))
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return n != 0


_EVEN_WEIGHTS_BY_CONSTANT = {4, 6, 8, 10, 14}


@dataclass(frozen=True)
class CuspVerdict:
    verdict: str  # "cusp", "non-cusp" or "inapplicable"
    reason: str

    @property
    def is_cusp(self) -> bool:
        return self.verdict == "cusp"


def cusp_test(exp: ParamodularExpansion) -> CuspVerdict:
    """Cusp criterion for square-free level from the weight and ``c(0, 0, 0)``."""
    t, k = exp.t, exp.weight
    if not is_squarefree(t):
        return CuspVerdict("inapplicable", f"level {t} is not square-free")
    if k.denominator != 1:
        return CuspVerdict("inapplicable", f"weight {k} is not integral")
    k = int(k)
    if k % 2 == 1 or k == 2:
        return CuspVerdict("cusp", f"weight {k} is odd or 2")
    if k in _EVEN_WEIGHTS_BY_CONSTANT:
        c000 = exp.coefficient(0, 0, 0)
        if c000 == 0:
            return CuspVerdict("cusp", f"weight {k} and c(0,0,0) = 0")
        return CuspVerdict("non-cusp", f"weight {k} and c(0,0,0) = {c000}")
    return CuspVerdict("inapplicable", f"weight {k} is not covered")


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    table: int
    level: int
    weight: int
    a: tuple
    b: tuple | None
    expected_block: ThetaBlockSpec
    corrected: tuple | None = None

    @property
    def case_name(self) -> str:
        return "2A4_5" if self.b is not None else "A6_7"

    def vectors(self):
        """Vectors used for verification (the corrected one where recorded)."""
        if self.corrected is not None:
            return self.corrected, self.b
        return self.a, self.b


def _vec(s: str) -> tuple:
    return tuple(int(x) for x in s.split(","))


def load_tables(path=None) -> list:
    if path is None:
        text = resources.files("paraborch").joinpath("data/tables.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) not in (5, 6):
            raise ValueError(f"malformed table line: {line!r}")
        vecs = parts[3].split(";")
        a = _vec(vecs[0])
        b = _vec(vecs[1]) if len(vecs) > 1 else None
        corrected = _vec(parts[5]) if len(parts) == 6 and parts[5] else None
        rows.append(TableRow(int(parts[0]), int(parts[1]), int(parts[2]), a, b,
                             ThetaBlockSpec.parse(parts[4]), corrected))
    return rows


@dataclass
class RowResult:
    row: TableRow
    computed_level: int
    computed_block: ThetaBlockSpec
    n0: int
    weight: Fraction
    cusp: CuspVerdict
    verdicts: dict = field(default_factory=dict)
    printed_vector_level: int | None = None

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def line(self) -> str:
        r = self.row
        vec = ",".join(map(str, r.a)) + ("" if r.b is None else ";" + ",".join(map(str, r.b)))
        status = "PASS" if self.ok else "FAIL"
        bad = [k for k, v in self.verdicts.items() if not v]
        note = ""
        if r.corrected is not None:
            note = (f" [printed vector has level {self.printed_vector_level};"
                    f" verified with {','.join(map(str, r.corrected))}]")
        extra = "" if not bad else f" mismatched: {', '.join(bad)}; computed {self.computed_block}, level {self.computed_level}"
        return f"{status} table {r.table} level {r.level} weight {r.weight} ({vec}){note}{extra}"


def verify_row(row: TableRow) -> RowResult:
    case = get_case(row.case_name)
    a, b = row.vectors()
    lf = linear_forms(case, a, b)
    phi = pullback(lattice_form(case, 1), a, b, qtrunc=1)
    data = product_data(phi)
    spec = first_fj_spec(phi)
    base = 3 if b is None else 4
    cusp = cusp_test(expand(phi, 1, 0))
    verdicts = {
        "level": lf.index == row.level and data.C == row.level,
        "block": spec == row.expected_block,
        "weight": data.weight == row.weight and base + lf.n0 == row.weight,
        "antisymmetric": data.antisymmetric,
        "cusp": cusp.is_cusp,
    }
    if b is None:
        verdicts["level"] = verdicts["level"] and index_formula(a) == row.level
        verdicts["n0"] = lf.n0 == 0
    printed = None
    if row.corrected is not None:
        printed = linear_forms(case, row.a, row.b).index
    return RowResult(row, lf.index, spec, lf.n0, data.weight, cusp, verdicts, printed)


@dataclass
class TableReport:
    which: int
    results: list

    @property
    def ok(self) -> bool:
        return bool(self.results) and all(r.ok for r in self.results)

    def lines(self) -> list:
        return [r.line() for r in self.results]


def reproduce_tables(which: int, rows=None) -> TableReport:
    if which not in (1, 2, 3, 4):
        raise ValueError("tables are numbered 1 to 4")
    rows = load_tables() if rows is None else rows
    return TableReport(which, [verify_row(r) for r in rows if r.table == which])


# ---------------------------------------------------------------------------
# eta identity for the A6 theta series
# ---------------------------------------------------------------------------


@dataclass
class EtaIdentityReport:
    equal: bool
    first_mismatch: Fraction | None
    eta_side: PuiseuxSeries
    lattice_side: PuiseuxSeries


def eta_identity_check(prec=21) -> EtaIdentityReport:
    """Compare the eta-quotient expression with the lattice theta series below ``q^prec``."""
    prec = Fraction(prec)
    lhs = (eta_quotient([(1, 7), (7, -1)], prec)
           + 7 * eta_quotient([(1, 3), (7, 3)], prec)
           + 7 * eta_quotient([(7, 7), (1, -1)], prec))
    rhs = theta_series(a6_dual_7(), prec)
    mismatch = None
    exps = sorted(set(e for e, _ in lhs.items()) | set(e for e, _ in rhs.items()))
    for e in exps:
        if lhs.coefficient(e) != rhs.coefficient(e):
            mismatch = e
            break
    equal = mismatch is None and lhs.trunc_exponent == rhs.trunc_exponent
    return EtaIdentityReport(equal, mismatch, lhs, rhs)
