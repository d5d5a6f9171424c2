"""Borcherds products of weight 0 Jacobi forms of rank one, truncated to a finite box."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .jacobi import EZJacobiForm, ThetaBlockSpec, theta_block
from .lattice import short_vectors_array
from .series import QZetaSeries, TruncationError
from .weil import LatticeJacobiForm

__all__ = [
    "BorcherdsData",
    "ParamodularExpansion",
    "LatticeThetaBlock",
    "product_data",
    "lattice_product_constant",
    "first_fj",
    "first_fj_spec",
    "lattice_first_fj",
    "required_qtrunc",
    "expand",
    "divisor_mult",
]


def _divisor_count(n: int) -> int:
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def _row(phi: EZJacobiForm, n) -> dict:
    return {Fraction(r): c for r, c in phi.series.row(n).items()}


@dataclass(frozen=True)
class BorcherdsData:
    A: int
    B: int
    C: int
    weight: Fraction
    D: int

    @property
    def antisymmetric(self) -> bool:
        return self.D % 2 == 1


def product_data(phi: EZJacobiForm) -> BorcherdsData:
    """Constants of the product attached to a weight 0 form; ``r > 0`` is the positive half."""
    if phi.weight != 0:
        raise ValueError("the input must have weight 0")
    row0 = _row(phi, 0)
    a = Fraction(sum(row0.values()), 24)
    b = Fraction(sum(r * c for r, c in row0.items() if r > 0), 2)
    c = Fraction(sum(r * r * c for r, c in row0.items()), 4)
    if a.denominator != 1:
        raise ValueError(f"q-order {a} is not an integer")
    if b.denominator != 1:
        raise ValueError(f"zeta-order {b} is not an integer")
    if c.denominator != 1:
        raise ValueError(f"first Fourier-Jacobi index {c} is not an integer")
    d = 0
    for qe in phi.series.q_exponents():
        if qe >= 0:
            break
        if qe.denominator == 1:
            d += _divisor_count(int(-qe)) * phi.coefficient(qe, 0)
    return BorcherdsData(int(a), int(b), int(c), Fraction(row0.get(Fraction(0), 0), 2), int(d))


def lattice_product_constant(psi: LatticeJacobiForm) -> Fraction:
    """``(1 / (2 rank)) * sum f(0, l) <l, l>`` over the q^0 row of the lattice form."""
    lat = psi.lattice.dual()
    xs, norms, scale = short_vectors_array(lat, 2, include_zero=True)
    vals = psi.coefficients_batch(0, xs, norms, scale)
    total = sum(Fraction(int(m), scale) * c for m, c in zip(norms.tolist(), vals.tolist()))
    return total / (2 * psi.lattice.rank)


def first_fj(phi: EZJacobiForm, prec) -> EZJacobiForm:
    """Generalized theta block read off the q^0 row: ``eta^f(0,0) prod_{r>0} (theta_r / eta)^f(0,r)``."""
    row0 = _row(phi, 0)
    pos = {}
    for r, c in row0.items():
        if r > 0 and c:
            if r.denominator != 1 or c < 0:
                raise ValueError(f"q^0 coefficient f(0,{r}) = {c} does not give a theta factor")
            pos[int(r)] = c
    eta_exp = row0.get(Fraction(0), 0) - sum(pos.values())
    spec = ThetaBlockSpec(tuple(pos.items()), eta_exp)
    block = theta_block(spec, prec)
    block.meta["source"] = "q^0 row"
    return block


def first_fj_spec(phi: EZJacobiForm) -> ThetaBlockSpec:
    row0 = _row(phi, 0)
    pos = {int(r): c for r, c in row0.items() if r > 0 and c}
    return ThetaBlockSpec(tuple(pos.items()), row0.get(Fraction(0), 0) - sum(pos.values()))


@dataclass(frozen=True)
class LatticeThetaBlock:
    """``eta^e prod_{l > 0} (theta(tau, <l, z>) / eta)^f(0, l)`` for a lattice form."""

    factors: tuple  # ((dual coordinates, multiplicity), ...)
    eta_exponent: int
    positive_direction: tuple

    @property
    def theta_count(self) -> int:
        return sum(m for _, m in self.factors)

    def pulled_back(self, v) -> ThetaBlockSpec:
        vals = []
        for c, m in self.factors:
            vals.extend([int(np.dot(c, v))] * m)
        if 0 in vals:
            raise ValueError("pull-back direction is orthogonal to a factor")
        return ThetaBlockSpec.from_values(vals, self.eta_exponent)


def lattice_first_fj(psi: LatticeJacobiForm, direction=None) -> LatticeThetaBlock:
    """The first Fourier-Jacobi block of the unrestricted product.

    Positivity of ``l`` is the sign of ``<l, direction>``; the default
    direction pairs to the height on root vectors.
    """
    lat = psi.lattice.dual()
    rank = lat.rank
    direction = tuple(direction or (1,) * rank)
    xs, norms, scale = short_vectors_array(lat, 2, include_zero=True)
    vals = psi.coefficients_batch(0, xs, norms, scale)
    heights = xs @ np.array(direction, dtype=np.int64)
    f00 = 0
    factors = []
    for x, h, c in zip(xs.tolist(), heights.tolist(), vals.tolist()):
        if not c:
            continue
        if not any(x):
            f00 = c
            continue
        if h == 0:
            raise ValueError(f"direction {direction} is orthogonal to {x}")
        if h > 0:
            factors.append((tuple(x), c))
    factors.sort()
    return LatticeThetaBlock(tuple(factors), f00 - sum(m for _, m in factors), direction)


# ---------------------------------------------------------------------------
# expansion
# ---------------------------------------------------------------------------


def _binom_general(e: int, j: int) -> int:
    if e >= 0:
        return comb(e, j)
    return (-1) ** j * comb(-e + j - 1, j)


@dataclass
class ParamodularExpansion:
    """Coefficients ``c(n, r, m)`` of ``q^n zeta^r xi^(t m)``, exact for ``1 <= m <= M`` and ``n <= N``."""

    t: int
    weight: Fraction
    antisymmetric: bool
    M: int
    N: int
    coeffs: dict = field(default_factory=dict)

    def coefficient(self, n: int, r: int, m: int) -> int:
        if m > self.M or n > self.N:
            raise TruncationError(f"c({n},{r},{m}) lies outside the box m <= {self.M}, n <= {self.N}")
        if m < 1:
            return 0
        return self.coeffs.get((n, r, m), 0)

    def slice(self, m: int) -> EZJacobiForm:
        terms = {(n, r): c for (n, r, mm), c in self.coeffs.items() if mm == m}
        return EZJacobiForm(self.weight, Fraction(m * self.t), QZetaSeries.from_terms(terms, self.N + 1),
                            {"fj_level": m})

    def symmetry_defects(self, sign: int) -> list:
        """Entries on the overlap box violating ``c(n, r, m) = sign * c(m, r, n)``."""
        top = min(self.M, self.N)
        rs = sorted({r for (n, r, m) in self.coeffs})
        bad = []
        for n in range(0, top + 1):
            for m in range(n, top + 1):
                for r in rs:
                    x, y = self.coefficient(n, r, m), self.coefficient(m, r, n)
                    if x != sign * y:
                        bad.append((n, r, m, x, y))
        return bad

    def antisymmetry_defects(self) -> list:
        return self.symmetry_defects(-1)

    def diagonal(self) -> dict:
        return {k: v for k, v in self.coeffs.items() if k[0] == k[2]}

    def null_norm_coefficients(self) -> list:
        """Nonzero ``c(n, r, m)`` with ``4 n m t - r^2 = 0``."""
        return sorted(k for k, c in self.coeffs.items() if c and 4 * k[0] * k[2] * self.t == k[1] ** 2)

    def to_dict(self):
        return {
            "t": self.t,
            "weight": str(self.weight),
            "antisymmetric": self.antisymmetric,
            "M": self.M,
            "N": self.N,
            "coeffs": [[n, r, m, str(c)] for (n, r, m), c in sorted(self.coeffs.items())],
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        coeffs = {(int(n), int(r), int(m)): int(c) for n, r, m, c in d["coeffs"]}
        return cls(int(d["t"]), Fraction(d["weight"]), bool(d["antisymmetric"]), int(d["M"]), int(d["N"]), coeffs)

    @classmethod
    def from_json(cls, s):
        return cls.from_dict(json.loads(s))


def required_qtrunc(A: int, M: int, N: int) -> int:
    """Input precision (in q) needed by :func:`expand` for the box ``(M, N)``."""
    need = 1
    for m0 in range(1, M):
        top = N - A + (M - 1 - m0)
        if top >= 0:
            need = max(need, m0 * top + 1)
    return need


def _zeta_binomial(e: int, n: int, r: int, qtrunc):
    """``(1 - q^n zeta^r)^e`` as a (q, zeta)-series, exact below ``q^qtrunc``."""
    terms = {}
    j = 0
    while True:
        if qtrunc is not None and n * j >= qtrunc:
            break
        if e >= 0 and j > e:
            break
        if e < 0 and n == 0:
            raise ValueError("negative exponent on a q-free factor has no finite expansion")
        terms[(n * j, r * j)] = terms.get((n * j, r * j), 0) + (-1) ** j * _binom_general(e, j)
        j += 1
    return QZetaSeries.from_terms(terms, qtrunc)


def _leading_block_by_product(phi: EZJacobiForm, data: BorcherdsData, qtop: int) -> QZetaSeries:
    """``q^A zeta^B prod (1 - q^n zeta^r)^f(0,r)`` over ``n > 0`` or ``n = 0, r < 0``; exact below ``q^qtop``."""
    row0 = _row(phi, 0)
    rel = qtop - data.A
    acc = QZetaSeries.from_terms({(0, data.B): 1})
    for r, c in sorted(row0.items()):
        if r < 0 and c:
            acc = acc * _zeta_binomial(c, 0, int(r), None)
    if rel <= 0:
        return QZetaSeries.from_terms({}, qtop)
    acc = acc.truncate(rel)
    for n in range(1, rel):
        for r, c in sorted(row0.items(), key=lambda x: (abs(x[0]), x[0])):
            if c:
                acc = acc * _zeta_binomial(c, n, int(r), rel)
    return acc.shift(data.A)


def expand(phi: EZJacobiForm, M: int, N: int, order: str = "mnr") -> ParamodularExpansion:
    """Truncated product ``q^A zeta^B xi^t prod (1 - q^n zeta^r xi^(t m))^f(n m, r)``.

    Exact for ``1 <= m <= M`` and ``n <= N``.  ``order`` picks the sequence in
    which factors are multiplied ("mnr", or "hecke" to group by ``(n m, r)``);
    the result does not depend on it.
    """
    if M < 1:
        raise ValueError("M must be at least 1")
    data = product_data(phi)
    t = int(phi.index)
    if data.C != t:
        raise ValueError(f"first Fourier-Jacobi index {data.C} differs from the index {t}")
    need = required_qtrunc(data.A, M, N)
    if phi.qtrunc is not None and phi.qtrunc < need:
        raise TruncationError(f"input exact below q^{phi.qtrunc}, the box ({M}, {N}) needs q^{need}")
    bound = {m: N + (M - m) + 1 for m in range(1, M + 1)}
    slices = {1: _leading_block_by_product(phi, data, bound[1])}
    for m in range(2, M + 1):
        slices[m] = QZetaSeries.from_terms({}, bound[m])
    factors = []
    for m0 in range(1, M):
        top = N - data.A + (M - 1 - m0)
        for n0 in range(-1, top + 1):
            try:
                row = _row(phi, n0 * m0)
            except TruncationError as exc:
                raise TruncationError(f"input too short for factor level {m0}, q^{n0}") from exc
            for r, e in row.items():
                if e:
                    factors.append((m0, n0, int(r), e))
    if order == "mnr":
        factors.sort(key=lambda f: (f[0], f[1], abs(f[2]), f[2]))
    elif order == "hecke":
        factors.sort(key=lambda f: (f[0] * f[1], f[2], f[0]))
    else:
        raise ValueError(f"unknown order {order!r}")
    for m0, n0, r, e in factors:
        for m in range(M, m0, -1):
            acc = slices[m]
            j = 1
            while m - j * m0 >= 1:
                coef = (-1) ** j * _binom_general(e, j)
                if coef:
                    src = slices[m - j * m0]
                    acc = acc + (src * coef).shift(n0 * j, r * j).truncate(bound[m])
                j += 1
            slices[m] = acc
    coeffs = {}
    for m, s in slices.items():
        for (n, r), c in s.items():
            if n <= N:
                if n.denominator != 1 or r.denominator != 1:
                    raise ValueError(f"non-integral exponent ({n}, {r}) in slice {m}")
                coeffs[(int(n), int(r), m)] = c
    weight = data.weight
    return ParamodularExpansion(t, weight, data.antisymmetric, M, N, coeffs)


def divisor_mult(form, n: int, l) -> int:
    """``sum_{d > 0} f(d^2 n, d l)`` for a datum of negative hyperbolic norm.

    ``form`` is a :class:`LatticeJacobiForm` (``l`` in dual coordinates) or an
    :class:`EZJacobiForm` (``l`` an integer).
    """
    if isinstance(form, LatticeJacobiForm):
        c = [int(x) for x in l]
        hyp = 2 * n - form.lattice.dual().norm(c)
        floor = Fraction(-2)

        def coeff(d):
            return form.coefficient(d * d * n, [d * x for x in c])
    else:
        t = Fraction(form.index)
        hyp = 4 * t * n - Fraction(l) ** 2
        floor = -4 * t

        def coeff(d):
            return form.coefficient(d * d * n, d * l)
    if hyp >= 0:
        raise ValueError("divisor data must have negative hyperbolic norm")
    total, d = 0, 1
    while d * d * hyp >= floor:
        total += coeff(d)
        d += 1
    return total
