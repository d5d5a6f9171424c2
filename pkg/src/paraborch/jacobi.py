"""Theta blocks, pull-backs of lattice Jacobi forms and hyperbolic-norm scans."""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .lattice import short_vectors_array
from .series import PuiseuxSeries, QZetaSeries, eta_quotient, theta_rescaled
from .weil import LatticeJacobiForm, LiftCase

__all__ = [
    "ThetaBlockSpec",
    "EZJacobiForm",
    "NormScan",
    "LinearForms",
    "theta_block",
    "linear_forms",
    "index_formula",
    "block_spec",
    "pullback",
    "kac_weyl",
    "norm_scan",
]

_TOKEN = re.compile(r"^(th|eta)(\d*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class ThetaBlockSpec:
    """``eta^e * prod_d theta(tau, d z)^f(d)``.

    ``theta_exponents`` is a sorted tuple of ``(d, f(d))`` with ``d, f(d) >= 1``.
    """

    theta_exponents: tuple
    eta_exponent: int = 0

    def __post_init__(self):
        items = self.theta_exponents
        if isinstance(items, dict):
            items = items.items()
        merged = Counter()
        for d, m in items:
            d, m = int(d), int(m)
            if d < 1 or m < 1:
                raise ValueError(f"theta factor ({d}, {m}) must have d >= 1 and multiplicity >= 1")
            merged[d] += m
        object.__setattr__(self, "theta_exponents", tuple(sorted(merged.items())))
        object.__setattr__(self, "eta_exponent", int(self.eta_exponent))

    @classmethod
    def from_values(cls, values, eta_exponent: int) -> "ThetaBlockSpec":
        """Block with one ``theta_|v|`` per nonzero value."""
        c = Counter(abs(int(v)) for v in values if v != 0)
        return cls(tuple(c.items()), eta_exponent)

    @property
    def multiplicities(self) -> dict:
        return dict(self.theta_exponents)

    @property
    def theta_count(self) -> int:
        return sum(m for _, m in self.theta_exponents)

    @property
    def weight(self) -> Fraction:
        return Fraction(self.theta_count + self.eta_exponent, 2)

    @property
    def index(self) -> Fraction:
        return Fraction(sum(m * d * d for d, m in self.theta_exponents), 2)

    @property
    def q_order(self) -> Fraction:
        return Fraction(self.theta_count, 8) + Fraction(self.eta_exponent, 24)

    @property
    def zeta_order(self) -> Fraction:
        """Lowest zeta exponent of the leading q-term."""
        return -Fraction(sum(m * d for d, m in self.theta_exponents), 2)

    def format(self) -> str:
        parts = []
        if self.eta_exponent > 0:
            parts.append("eta" if self.eta_exponent == 1 else f"eta^{self.eta_exponent}")
        for d, m in self.theta_exponents:
            name = "th" if d == 1 else f"th{d}"
            parts.append(name if m == 1 else f"{name}^{m}")
        s = " ".join(parts)
        if self.eta_exponent < 0:
            e = -self.eta_exponent
            s += " / " + ("eta" if e == 1 else f"eta^{e}")
        return s

    __str__ = format

    @classmethod
    def parse(cls, text: str) -> "ThetaBlockSpec":
        num, slash, den = text.partition("/")
        thetas = Counter()
        eta = 0
        for sign, chunk in ((1, num), (-1, den)):
            for tok in chunk.split():
                m = _TOKEN.match(tok)
                if not m:
                    raise ValueError(f"cannot parse block token {tok!r}")
                e = int(m.group(3) or 1)
                if m.group(1) == "eta":
                    if m.group(2):
                        raise ValueError(f"eta takes no rescaling: {tok!r}")
                    eta += sign * e
                else:
                    if sign < 0:
                        raise ValueError("theta factors in the denominator are not supported")
                    thetas[int(m.group(2) or 1)] += e
        if slash and not den.strip():
            raise ValueError("empty denominator")
        return cls(tuple(thetas.items()), eta)


@dataclass
class EZJacobiForm:
    """Jacobi form in one elliptic variable, stored as a (q, zeta)-series."""

    weight: Fraction
    index: Fraction
    series: QZetaSeries
    meta: dict = field(default_factory=dict)

    @property
    def qtrunc(self):
        return self.series.qtrunc_exponent

    def coefficient(self, n, r):
        return self.series.coefficient(n, r)

    @property
    def coeffs(self) -> dict:
        return {k: v for k, v in self.series.items()}

    def is_zero(self) -> bool:
        return self.series.is_zero()

    def same_coefficients(self, other: "EZJacobiForm") -> bool:
        return self.series == other.series

    def to_dict(self):
        return {
            "weight": str(self.weight),
            "index": str(self.index),
            "qtrunc": None if self.qtrunc is None else str(self.qtrunc),
            "meta": {k: str(v) for k, v in self.meta.items()},
            "coeffs": [[str(n), str(r), str(c)] for (n, r), c in self.series.items()],
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        terms = {(Fraction(n), Fraction(r)): int(c) for n, r, c in d["coeffs"]}
        qt = None if d["qtrunc"] is None else Fraction(d["qtrunc"])
        return cls(Fraction(d["weight"]), Fraction(d["index"]), QZetaSeries.from_terms(terms, qt), dict(d["meta"]))


def theta_block(spec: ThetaBlockSpec, prec) -> EZJacobiForm:
    """Theta block exact for all q-exponents below ``prec``."""
    prec = Fraction(prec)
    rel = prec - spec.q_order
    if rel <= 0:
        return EZJacobiForm(spec.weight, spec.index, QZetaSeries.from_terms({}, prec), {"block": spec.format()})
    acc = QZetaSeries.constant(1)
    for d, m in spec.theta_exponents:
        th = theta_rescaled(d, Fraction(1, 8) + rel)
        acc = acc * th ** m
    if spec.eta_exponent:
        acc = acc * eta_quotient([(1, spec.eta_exponent)], Fraction(spec.eta_exponent, 24) + rel)
    return EZJacobiForm(spec.weight, spec.index, acc, {"block": spec.format()})


@dataclass(frozen=True)
class LinearForms:
    values: tuple
    n0: int
    index: int


def linear_forms(case: LiftCase, a, b=None) -> LinearForms:
    """Values of the positive roots on ``sum a_i w_i`` (plus ``sum b_j w'_j``)."""
    coords = tuple(int(x) for x in a) + (tuple(int(x) for x in b) if b is not None else ())
    if len(coords) != case.rank:
        raise ValueError(f"expected {case.rank} coordinates, got {len(coords)}")
    vals = tuple(sum(c * x for c, x in zip(root, coords)) for root in case.roots.positive_root_coords)
    sq = sum(v * v for v in vals)
    return LinearForms(vals, vals.count(0), sq // 2)


def index_formula(a) -> int:
    """Closed quadratic form for the index of the rank-6 pull-back."""
    a1, a2, a3, a4, a5, a6 = (int(x) for x in a)
    return (3 * a1 * a1 + 5 * a2 * a1 + 4 * a3 * a1 + 3 * a4 * a1 + 2 * a5 * a1 + a6 * a1 + 5 * a2 * a2
            + 8 * a3 * a2 + 6 * a4 * a2 + 4 * a5 * a2 + 2 * a6 * a2 + 6 * a3 * a3 + 9 * a4 * a3 + 6 * a5 * a3
            + 3 * a6 * a3 + 6 * a4 * a4 + 8 * a5 * a4 + 4 * a6 * a4 + 5 * a5 * a5 + 5 * a6 * a5 + 3 * a6 * a6)


def block_spec(case: LiftCase, a, b=None) -> ThetaBlockSpec:
    """First Fourier-Jacobi block of the product attached to ``a`` (and ``b``)."""
    lf = linear_forms(case, a, b)
    npos = len(lf.values)
    return ThetaBlockSpec.from_values(lf.values, case.rank - npos + 3 * lf.n0)


def pullback(psi: LatticeJacobiForm, a, b=None, qtrunc=1, check_bound: bool = True) -> EZJacobiForm:
    """Restrict the lattice form to the line ``z * v``; coefficients exact for ``n < qtrunc``.

    With ``check_bound`` the shell of vectors just past the norm bound ``2n + 2``
    is re-read and must contribute nothing.
    """
    case = psi.case
    lf = linear_forms(case, a, b)
    v = np.array([int(x) for x in a] + ([int(x) for x in b] if b is not None else []), dtype=np.int64)
    qtrunc = int(qtrunc)
    if qtrunc < 0:
        raise ValueError("qtrunc must be at least 0")
    lat = case.lattice.dual()
    reach = 2 * qtrunc + (2 if check_bound else 0)
    xs, norms, scale = short_vectors_array(lat, reach, include_zero=True)
    rs = xs @ v
    terms = Counter()
    for n in range(-1, qtrunc):
        bound = (2 * n + 2) * scale
        sel = norms <= bound
        vals = psi.coefficients_batch(n, xs[sel], norms[sel], scale)
        for r, c in zip(rs[sel].tolist(), vals.tolist()):
            if c:
                terms[(n, r)] += c
        if check_bound:
            shell = (norms > bound) & (norms <= bound + 2 * scale)
            extra = psi.coefficients_batch(n, xs[shell], norms[shell], scale)
            if any(c != 0 for c in extra.tolist()):
                raise AssertionError(f"nonzero coefficient beyond the norm bound at n = {n}")
    series = QZetaSeries.from_terms({k: c for k, c in terms.items() if c}, qtrunc)
    meta = {"case": case.name, "a": tuple(a), "n0": lf.n0}
    if b is not None:
        meta["b"] = tuple(b)
    return EZJacobiForm(Fraction(0), Fraction(lf.index), series, meta)


def kac_weyl(roots, a, prec) -> EZJacobiForm:
    """``eta^rank prod_{r>0} theta(tau, (r, v) z) / eta`` built factor by factor over the roots."""
    coords = [int(x) for x in a]
    vals = [sum(c * x for c, x in zip(root, coords)) for root in roots.positive_root_coords]
    npos = len(vals)
    spec_eta = roots.rank - npos
    weight = Fraction(roots.rank, 2)
    index = Fraction(sum(v * v for v in vals), 2)
    prec = Fraction(prec)
    if 0 in vals:
        return EZJacobiForm(weight, index, QZetaSeries.from_terms({}, prec),
                            {"kac_weyl": roots.name, "identically_zero": True})
    rel = prec - Fraction(npos, 8) - Fraction(spec_eta, 24)
    acc = QZetaSeries.constant(1)
    if rel > 0:
        for v in vals:
            acc = acc * theta_rescaled(v, Fraction(1, 8) + rel)
        if spec_eta:
            acc = acc * eta_quotient([(1, spec_eta)], Fraction(spec_eta, 24) + rel)
    else:
        acc = QZetaSeries.from_terms({}, prec)
    return EZJacobiForm(weight, index, acc, {"kac_weyl": roots.name})


@dataclass(frozen=True)
class NormScan:
    min_norm: object
    holomorphic: bool
    cuspidal: bool
    witness: tuple
    index: Fraction
    exact_below: object

    def label(self) -> str:
        verdict = "cusp" if self.cuspidal else "holomorphic" if self.holomorphic else "not holomorphic"
        return f"{verdict} (up to q^{self.exact_below}, index {self.index})"


def norm_scan(phi: EZJacobiForm) -> NormScan:
    """Minimum of ``4 t n - r^2`` over the stored nonzero coefficients."""
    t = Fraction(phi.index)
    best, wit = None, None
    for (n, r), c in phi.series.items():
        h = 4 * t * n - r * r
        if best is None or h < best:
            best, wit = h, (n, r)
    if best is None:
        return NormScan(None, True, True, (), t, phi.qtrunc)
    return NormScan(best, best >= 0, best > 0, wit, t, phi.qtrunc)
