"""Lift of an eta quotient on Gamma_0(p) to a vector-valued form and a lattice Jacobi form.

Only two data are supported, each with a certified closed form for the
S-transformed scalar form:

* ``A6_7``:  ``eta(tau)^-3 eta(7 tau)^-3`` on the lattice ``A6^v(7)``;
* ``2A4_5``: ``eta(tau)^-4 eta(5 tau)^-4`` on ``A4^v(5) + A4^v(5)``.
"""
from __future__ import annotations

import cmath
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd

import numpy as np

from .lattice import DiscClass, Lattice, a4a4_dual_5, a6_dual_7, disc_reduce, root_sum, root_system
from .series import PuiseuxSeries, TruncationError, eta_quotient, residue_components

__all__ = [
    "LiftCase",
    "get_case",
    "CASES",
    "combined_multiplier",
    "multiplier_numeric_check",
    "s_transform",
    "VVForm",
    "lift",
    "LatticeJacobiForm",
    "jacobi_coefficient",
]


@dataclass(frozen=True)
class LiftCase:
    name: str
    p: int
    lattice: Lattice
    k: int
    expected_f00: int
    roots: object = field(compare=False, repr=False)

    def __post_init__(self):
        if self.lattice.rank != 2 * abs(self.k):
            raise ValueError("rank must equal 2|k|")
        if self.lattice.level != self.p:
            raise ValueError("lattice level must equal p")
        if self.expected_f00 != self.lattice.rank:
            raise ValueError("f(0,0) must equal the rank")
        if Fraction(self.k) + Fraction(self.lattice.rank, 2) != 0:
            raise ValueError("the lift must have weight 0")

    @property
    def f_spec(self):
        return [(1, self.k), (self.p, self.k)]

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @cached_property
    def disc_exponent(self) -> int:
        """``e`` with ``|D(L)| = p^e``."""
        d, e = int(self.lattice.det), 0
        while d % self.p == 0:
            d //= self.p
            e += 1
        if d != 1:
            raise ValueError("discriminant is not a power of p")
        return e


def _make_cases():
    a6 = LiftCase("A6_7", 7, a6_dual_7(), -3, 6, root_system(6))
    a4 = LiftCase("2A4_5", 5, a4a4_dual_5(), -4, 8, root_sum(root_system(4), root_system(4)))
    return {a6.name: a6, a4.name: a4}


CASES = _make_cases()
_ALIASES = {"A6": "A6_7", "A6_7": "A6_7", "A4A4": "2A4_5", "2A4": "2A4_5", "2A4_5": "2A4_5"}


def get_case(name: str) -> LiftCase:
    try:
        return CASES[_ALIASES[name]]
    except KeyError:
        raise ValueError(f"unknown case {name!r}; expected one of {sorted(_ALIASES)}") from None


def _legendre_minus_one(p: int) -> int:
    return 1 if p % 4 == 1 else -1


def combined_multiplier(case: LiftCase) -> Fraction:
    """Exact product of the lift constant and the S-transformation constant.

    With ``|D| = p^e`` the constant is
    ``zeta_8^(rank + 6k) * (-1/p)^e * p^(1 - e/2 - k/2)``;
    the root of unity and the power of ``p`` must both be rational.
    """
    if case.name not in CASES:
        raise ValueError(f"no certified transformation for {case.name}")
    e = case.disc_exponent
    eighth = (case.rank + 6 * case.k) % 8
    p_power = Fraction(2 - e - case.k, 2)
    if eighth not in (0, 4) or p_power.denominator != 1:
        raise ValueError("multiplier is not rational for this case")
    sign = (1 if eighth == 0 else -1) * _legendre_minus_one(case.p) ** e
    return Fraction(sign) * Fraction(case.p) ** int(p_power)


def _eta_numeric(tau: complex, terms: int = 400) -> complex:
    q = cmath.exp(2j * cmath.pi * tau)
    prod = cmath.exp(2j * cmath.pi * tau / 24)
    qn = 1
    for _ in range(terms):
        qn *= q
        prod *= 1 - qn
    return prod


def multiplier_numeric_check(case: LiftCase, taus=(1j, 0.3 + 1.1j)) -> float:
    """Largest deviation from 1 of (lift constant) * (f|S) / (eta(tau)^k eta(tau/p)^k)."""
    k, p = case.k, case.p
    xi1 = _legendre_minus_one(p) ** case.disc_exponent * cmath.exp(case.rank * cmath.pi * 1j / 4)
    const = xi1 * p / cmath.sqrt(p ** case.disc_exponent)
    worst = 0.0
    for tau in taus:
        tau = complex(tau)
        s = -1 / tau
        f_at_s = _eta_numeric(s) ** k * _eta_numeric(p * s) ** k
        f_slash = tau ** (-k) * f_at_s
        target = _eta_numeric(tau) ** k * _eta_numeric(tau / p) ** k
        worst = max(worst, abs(const * f_slash / target - combined_multiplier(case)))
    return worst


def s_transform(case: LiftCase, prec):
    """``(eta(tau)^k eta(tau/p)^k, combined multiplier)`` exact below ``q^prec``."""
    if case.name not in CASES:
        raise ValueError(f"no certified transformation for {case.name}")
    series = eta_quotient([(1, case.k), (Fraction(1, case.p), case.k)], prec)
    return series, combined_multiplier(case)


@dataclass(frozen=True)
class VVForm:
    """Vector-valued form whose components depend only on the class norm."""

    case: LiftCase
    f_series: PuiseuxSeries
    residues: tuple
    multiplier: Fraction

    @property
    def p(self) -> int:
        return self.case.p

    @cached_property
    def zero_component(self) -> PuiseuxSeries:
        return self.f_series + self.residues[0]

    def component_for(self, zero: bool, norm_mod2) -> PuiseuxSeries:
        if zero:
            return self.zero_component
        j = (-Fraction(norm_mod2) / 2) % 1 * self.p
        if j.denominator != 1:
            raise ValueError(f"norm {norm_mod2} is not a class norm at level {self.p}")
        return self.residues[int(j)]

    def component(self, cls: DiscClass) -> PuiseuxSeries:
        return self.component_for(cls.is_zero, cls.norm_mod2)

    def class_norms(self):
        """Norms mod 2 of nonzero classes, one per residue index."""
        return [(-Fraction(2 * t, self.p)) % 2 for t in range(self.p)]

    def to_dict(self):
        classes = [{"norm_mod2": "0", "zero": True, "series": self.zero_component.to_dict()}]
        for t, nm in enumerate(self.class_norms()):
            classes.append({"norm_mod2": str(nm), "zero": False, "series": self.residues[t].to_dict()})
        return {"case": self.case.name, "multiplier": str(self.multiplier), "classes": classes}

    def to_json(self):
        return json.dumps(self.to_dict())


def lift(case: LiftCase, prec) -> VVForm:
    """Components exact below ``q^prec``."""
    prec = Fraction(prec)
    series, mult = s_transform(case, prec)
    parts = residue_components(series, case.p)
    residues = tuple(g * mult for g in parts)
    f = eta_quotient(case.f_spec, prec)
    return VVForm(case, f, residues, mult)


class LatticeJacobiForm:
    """Weight 0, index 1 Jacobi form for the case lattice built from a lifted form.

    Coefficients ``f(n, l)`` are addressed by ``n`` and dual coordinates of ``l``.
    """

    def __init__(self, form: VVForm):
        self.form = form
        self.lattice = form.case.lattice
        gi = self.lattice.gram_inverse
        d = 1
        for r in gi:
            for x in r:
                d = d * x.denominator // gcd(d, x.denominator)
        self._kd = d
        self._k = np.array([[int(x * d) for x in r] for r in gi], dtype=np.int64)
        self._dual = self.lattice.dual()
        self._memo = {}

    @property
    def case(self) -> LiftCase:
        return self.form.case

    def _lookup(self, zero: bool, hyp_norm: Fraction):
        key = (zero, hyp_norm)
        hit = self._memo.get(key)
        if hit is None:
            comp = self.form.component_for(zero, (-hyp_norm) % 2)
            hit = comp.coefficient(hyp_norm / 2)
            self._memo[key] = hit
        return hit

    def coefficient(self, n: int, c) -> int:
        """``f(n, l)`` for ``l`` with dual coordinates ``c``."""
        cls = disc_reduce(self.lattice, c)
        norm = self._dual.norm(c)
        return self._lookup(cls.is_zero, 2 * n - norm)

    def zero_class_mask(self, xs: np.ndarray) -> np.ndarray:
        return ((xs @ self._k.T) % self._kd == 0).all(axis=1)

    def coefficients_batch(self, n: int, xs: np.ndarray, norms: np.ndarray, scale: int) -> np.ndarray:
        """``f(n, l)`` for rows ``xs`` (dual coordinates) with exact norms ``norms / scale``."""
        zero = self.zero_class_mask(xs)
        out = np.zeros(len(xs), dtype=object)
        cache = {}
        for i, (z, m) in enumerate(zip(zero.tolist(), norms.tolist())):
            key = (z, m)
            v = cache.get(key)
            if v is None:
                v = self._lookup(z, 2 * n - Fraction(m, scale))
                cache[key] = v
            out[i] = v
        return out


def jacobi_coefficient(form: VVForm, lat: Lattice, n: int, c) -> int:
    """``f(n, l)``: coefficient of ``q^(n - <l,l>/2)`` in the component of the class of ``l``."""
    cls = disc_reduce(lat, c)
    norm = lat.dual().norm(c)
    return form.component(cls).coefficient(n - norm / 2)
