"""Exact truncated q-series and (q, zeta)-series.

Exponents are stored as integers over a per-series denominator, coefficients
as Python integers (``Fraction`` only where a non-unit division forces it).
Every series carries a truncation bound; asking for a coefficient at or
beyond it raises :class:`TruncationError` instead of returning zero.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from numbers import Rational

import numpy as np

__all__ = [
    "TruncationError",
    "PuiseuxSeries",
    "QZetaSeries",
    "eta",
    "eta_quotient",
    "residue_components",
    "theta_ez",
    "theta_rescaled",
    "theta_product",
]


class TruncationError(ValueError):
    """Raised when a coefficient beyond the exactness bound is requested."""


def _lcm(a, b):
    return a * b // gcd(a, b)


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    if isinstance(c, (int, np.integer)):
        return int(c)
    return c


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _scaled(x, denom, what="exponent"):
    v = _frac(x) * denom
    if v.denominator != 1:
        raise ValueError(f"{what} {x} is not on the 1/{denom} grid")
    return int(v)


def _min_opt(*vals):
    vals = [v for v in vals if v is not None]
    return min(vals) if vals else None


def _coeff_str(c):
    c = _norm_coeff(c)
    return str(c)


def _coeff_parse(s):
    return _norm_coeff(Fraction(s)) if "/" in s else int(s)


# ---------------------------------------------------------------------------
# one variable
# ---------------------------------------------------------------------------


class PuiseuxSeries:
    """Sparse series in q with exponents in ``(1/denom) Z``.

    ``terms`` maps scaled exponents to nonzero coefficients; ``trunc`` is the
    scaled exponent below which the series is exact (``None``: exact
    everywhere, i.e. a finite sum).
    """

    __slots__ = ("denom", "terms", "trunc")

    def __init__(self, terms=None, denom=1, trunc=None):
        denom = int(denom)
        if denom <= 0:
            raise ValueError("denom must be positive")
        terms = dict(terms or {})
        if trunc is not None:
            trunc = int(trunc)
            terms = {e: c for e, c in terms.items() if e < trunc}
        terms = {int(e): _norm_coeff(c) for e, c in terms.items() if c != 0}
        g = denom
        for e in terms:
            g = gcd(g, e)
        if trunc is not None:
            g = gcd(g, trunc)
        if g > 1:
            denom //= g
            terms = {e // g: c for e, c in terms.items()}
            if trunc is not None:
                trunc //= g
        self.denom = denom
        self.terms = terms
        self.trunc = trunc

    # construction -----------------------------------------------------------------

    @classmethod
    def from_exponents(cls, terms, trunc=None):
        """Build from a map ``{rational exponent: coefficient}``."""
        d = 1
        for e in terms:
            d = _lcm(d, _frac(e).denominator)
        if trunc is not None:
            d = _lcm(d, _frac(trunc).denominator)
        scaled = {_scaled(e, d): c for e, c in terms.items()}
        return cls(scaled, d, None if trunc is None else _scaled(trunc, d))

    @classmethod
    def constant(cls, c=1, trunc=None):
        return cls.from_exponents({0: c}, trunc)

    # access -----------------------------------------------------------------------

    @property
    def trunc_exponent(self):
        return None if self.trunc is None else Fraction(self.trunc, self.denom)

    def coefficient(self, exp):
        exp = _frac(exp)
        v = exp * self.denom
        if self.trunc is not None and v >= self.trunc:
            raise TruncationError(
                f"coefficient of q^{exp} requested, series exact only below q^{self.trunc_exponent}"
            )
        if v.denominator != 1:
            return 0
        return self.terms.get(int(v), 0)

    __getitem__ = coefficient

    def items(self):
        """Sorted ``(exponent, coefficient)`` pairs with rational exponents."""
        return [(Fraction(e, self.denom), self.terms[e]) for e in sorted(self.terms)]

    def valuation(self):
        if not self.terms:
            return None
        return Fraction(min(self.terms), self.denom)

    def _val_bound(self):
        # lowest exponent that can be nonzero (None: identically zero and exact)
        if self.terms:
            return Fraction(min(self.terms), self.denom)
        return self.trunc_exponent

    def leading(self):
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("series has no nonzero term below its truncation")
        return v, self.terms[min(self.terms)]

    def is_zero(self):
        return not self.terms

    # denominators -----------------------------------------------------------------

    def _rescaled(self, denom):
        f = denom // self.denom
        assert f * self.denom == denom
        terms = {e * f: c for e, c in self.terms.items()}
        return terms, None if self.trunc is None else self.trunc * f

    def _common(self, other):
        d = _lcm(self.denom, other.denom)
        a, ta = self._rescaled(d)
        b, tb = other._rescaled(d)
        return d, a, ta, b, tb

    # arithmetic -------------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries.constant(other)
        d, a, ta, b, tb = self._common(other)
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, 0) + c
        return PuiseuxSeries(out, d, _min_opt(ta, tb))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries({e: -c for e, c in self.terms.items()}, self.denom, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QZetaSeries):
            return other * self
        if not isinstance(other, PuiseuxSeries):
            if not isinstance(other, Rational):
                return NotImplemented
            return PuiseuxSeries({e: c * other for e, c in self.terms.items()}, self.denom, self.trunc)
        d, a, ta, b, tb = self._common(other)
        va = min(a) if a else ta
        vb = min(b) if b else tb
        trunc = _min_opt(None if ta is None or vb is None else ta + vb,
                         None if tb is None or va is None else tb + va)
        if ta is not None and vb is None:
            trunc = None  # other is the exact zero
        if tb is not None and va is None:
            trunc = None
        out = {}
        bi = sorted(b.items())
        for ea, ca in a.items():
            for eb, cb in bi:
                e = ea + eb
                if trunc is not None and e >= trunc:
                    break
                out[e] = out.get(e, 0) + ca * cb
        return PuiseuxSeries(out, d, trunc)

    __rmul__ = __mul__

    def shift(self, exp):
        """Multiply by ``q^exp``."""
        exp = _frac(exp)
        d = _lcm(self.denom, exp.denominator)
        terms, trunc = self._rescaled(d)
        s = int(exp * d)
        return PuiseuxSeries({e + s: c for e, c in terms.items()}, d,
                             None if trunc is None else trunc + s)

    def subs_power(self, scale):
        """Substitute ``q -> q^scale`` for a positive rational ``scale``."""
        scale = _frac(scale)
        if scale <= 0:
            raise ValueError("scale must be positive")
        d = self.denom * scale.denominator
        m = scale.numerator
        return PuiseuxSeries({e * m: c for e, c in self.terms.items()}, d,
                             None if self.trunc is None else self.trunc * m)

    def truncate(self, bound):
        """Drop everything at or above ``q^bound`` (never raises the bound)."""
        bound = _frac(bound)
        if self.trunc_exponent is not None and bound > self.trunc_exponent:
            bound = self.trunc_exponent
        d = _lcm(self.denom, bound.denominator)
        terms, _ = self._rescaled(d)
        return PuiseuxSeries(terms, d, int(bound * d))

    def inverse(self):
        """Multiplicative inverse; rational coefficients if the leading one is not +-1."""
        v, c = self.leading()
        if self.trunc is None and len(self.terms) == 1:
            return PuiseuxSeries({-min(self.terms): Fraction(1) / c}, self.denom, None)
        if self.trunc is None:
            raise ValueError("inverse of an exact non-monomial needs a truncation bound")
        lead = min(self.terms)
        n = self.trunc - lead  # relative precision in scaled units
        a = [0] * n
        for e, x in self.terms.items():
            a[e - lead] = x
        inv_c = c if c in (1, -1) else Fraction(1) / c
        b = [0] * n
        b[0] = inv_c
        nz = [(j, a[j]) for j in range(1, n) if a[j]]
        for k in range(1, n):
            s = 0
            for j, aj in nz:
                if j > k:
                    break
                if b[k - j]:
                    s += aj * b[k - j]
            b[k] = -s * inv_c
        return PuiseuxSeries({k - lead: b[k] for k in range(n)}, self.denom, n - lead)

    def __truediv__(self, other):
        if isinstance(other, PuiseuxSeries):
            return self * other.inverse()
        if isinstance(other, Rational):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        result = PuiseuxSeries.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (self.denom, self.trunc, self.terms) == (other.denom, other.trunc, other.terms)

    def __hash__(self):
        return hash((self.denom, self.trunc, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        shown = []
        for e, c in self.items()[:8]:
            shown.append(f"{c}*q^{e}")
        tail = "" if self.trunc is None else f" + O(q^{self.trunc_exponent})"
        more = " + ..." if len(self.terms) > 8 else ""
        return "PuiseuxSeries(" + (" + ".join(shown) or "0") + more + tail + ")"

    # serialization ----------------------------------------------------------------

    def to_dict(self):
        return {
            "denom": self.denom,
            "trunc": self.trunc,
            "terms": [[e, _coeff_str(self.terms[e])] for e in sorted(self.terms)],
        }

    @classmethod
    def from_dict(cls, d):
        return cls({int(e): _coeff_parse(c) for e, c in d["terms"]}, d["denom"], d["trunc"])

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s):
        return cls.from_dict(json.loads(s))


def _euler_unit(e, n):
    """Coefficients of prod_{k>=1} (1 - x^k)^e below x^n, as a list of ints."""
    if n <= 0:
        return []
    b = [0] * n
    b[0] = 1
    for k in range(1, n):
        for _ in range(abs(e)):
            for i in range(n - 1, k - 1, -1):
                b[i] -= b[i - k]
    if e >= 0:
        return b
    inv = PuiseuxSeries(dict(enumerate(b)), 1, n).inverse()
    return [inv.terms.get(i, 0) for i in range(n)]


def eta_quotient(factors, prec):
    """``prod eta(scale*tau)**exponent`` exact below ``q^prec``.

    ``factors`` is a list of ``(scale, exponent)`` with scale of the form d or 1/d.
    """
    prec = _frac(prec)
    parts = []
    for scale, e in factors:
        scale = _frac(scale)
        if scale <= 0 or (scale.numerator != 1 and scale.denominator != 1):
            raise ValueError(f"eta argument scale must be d or 1/d, got {scale}")
        parts.append((scale, int(e), scale * int(e) / 24))
    total_val = sum(v for _, _, v in parts)
    result = PuiseuxSeries.constant(1)
    for scale, e, v in parts:
        need = prec - (total_val - v)  # this factor must be exact below q^need
        n = int(-(-(need - v) // scale)) if need > v else 0
        unit = PuiseuxSeries(dict(enumerate(_euler_unit(e, n))), 1, n)
        result = result * unit.subs_power(scale).shift(v)
    return result.truncate(prec)


def eta(prec):
    """Dedekind eta ``q^(1/24) prod (1 - q^n)`` exact below ``q^prec``."""
    return eta_quotient([(1, 1)], prec)


def residue_components(s, p):
    """Split ``s`` into ``p`` pieces by exponent class ``t/p mod 1``.

    Piece ``t`` satisfies ``g_t(tau + 1) = exp(2 pi i t / p) g_t(tau)``.
    """
    p = int(p)
    if p <= 0:
        raise ValueError("p must be positive")
    buckets = [dict() for _ in range(p)]
    for e, c in s.terms.items():
        x = e * p
        if x % s.denom:
            raise ValueError(f"exponent {Fraction(e, s.denom)} is not a multiple of 1/{p}")
        buckets[(x // s.denom) % p][e] = c
    return [PuiseuxSeries(b, s.denom, s.trunc) for b in buckets]


# ---------------------------------------------------------------------------
# two variables
# ---------------------------------------------------------------------------

_I64_SAFE = 1 << 62


def _as_obj(a):
    return np.asarray(a, dtype=object)


def _maxabs(a):
    return max((abs(x) for x in a), default=0)


def _conv(a, b):
    """Exact convolution of two object arrays of integers/rationals."""
    if len(a) < len(b):
        a, b = b, a
    nzb = np.flatnonzero(b)
    if len(nzb) <= 6:
        out = np.zeros(len(a) + len(b) - 1, dtype=object)
        for i in nzb:
            out[i:i + len(a)] += a * b[i]
        return out
    ma, mb = _maxabs(a), _maxabs(b)
    if (isinstance(ma, int) and isinstance(mb, int)
            and ma * mb * len(nzb) < _I64_SAFE):
        r = np.convolve(a.astype(np.int64), b.astype(np.int64))
        return r.astype(object)
    return np.convolve(a, b)


def _strip(lo, arr):
    nz = np.flatnonzero(arr)
    if len(nz) == 0:
        return None
    return lo + int(nz[0]), arr[nz[0]:nz[-1] + 1]


def _poly_divmod(num, den):
    """Exact division of dense Laurent coefficient arrays; returns quotient or None."""
    num = list(num)
    den = list(den)
    lead = den[-1]
    nq = len(num) - len(den) + 1
    if nq <= 0:
        return None
    q = [0] * nq
    for i in range(nq - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c == 0:
            continue
        if lead in (1, -1):
            qi = c * lead
        else:
            qi = Fraction(c) / lead
        q[i] = _norm_coeff(qi)
        for j, dj in enumerate(den):
            num[i + j] -= qi * dj
    if any(x != 0 for x in num):
        return None
    return np.array([_norm_coeff(x) for x in q], dtype=object)


class QZetaSeries:
    """Series in q with Laurent polynomial coefficients in zeta.

    ``rows`` maps a scaled q-exponent to ``(lo, coeffs)``: the coefficient of
    ``zeta^((lo + i)/zdenom)`` is ``coeffs[i]``.  Exact below ``q^(qtrunc/qdenom)``.
    """

    __slots__ = ("qdenom", "zdenom", "rows", "qtrunc")

    def __init__(self, rows=None, qdenom=1, zdenom=1, qtrunc=None):
        qdenom, zdenom = int(qdenom), int(zdenom)
        clean = {}
        for q, (lo, arr) in (rows or {}).items():
            q = int(q)
            if qtrunc is not None and q >= qtrunc:
                continue
            s = _strip(int(lo), _as_obj(arr))
            if s is not None:
                clean[q] = s
        # reduce the q denominator
        g = qdenom
        for q in clean:
            g = gcd(g, q)
        if qtrunc is not None:
            g = gcd(g, int(qtrunc))
        if g > 1:
            qdenom //= g
            clean = {q // g: r for q, r in clean.items()}
            if qtrunc is not None:
                qtrunc = int(qtrunc) // g
        # reduce the zeta denominator
        g = zdenom
        for lo, arr in clean.values():
            if g == 1:
                break
            g = gcd(g, lo)
            for i in np.flatnonzero(arr):
                g = gcd(g, int(i))
                if g == 1:
                    break
        if g > 1:
            zdenom //= g
            clean = {q: (lo // g, arr[::g]) for q, (lo, arr) in clean.items()}
        self.qdenom = qdenom
        self.zdenom = zdenom
        self.rows = clean
        self.qtrunc = None if qtrunc is None else int(qtrunc)

    # construction -----------------------------------------------------------------

    @classmethod
    def from_terms(cls, terms, qtrunc=None):
        """Build from ``{(q exponent, zeta exponent): coefficient}`` with rational exponents."""
        qd, zd = 1, 1
        for qe, ze in terms:
            qd = _lcm(qd, _frac(qe).denominator)
            zd = _lcm(zd, _frac(ze).denominator)
        if qtrunc is not None:
            qd = _lcm(qd, _frac(qtrunc).denominator)
        grouped = {}
        for (qe, ze), c in terms.items():
            if c == 0:
                continue
            grouped.setdefault(_scaled(qe, qd), {})[_scaled(ze, zd)] = c
        rows = {}
        for q, zs in grouped.items():
            lo, hi = min(zs), max(zs)
            arr = np.zeros(hi - lo + 1, dtype=object)
            for z, c in zs.items():
                arr[z - lo] = c
            rows[q] = (lo, arr)
        return cls(rows, qd, zd, None if qtrunc is None else _scaled(qtrunc, qd))

    @classmethod
    def from_puiseux(cls, s):
        rows = {e: (0, np.array([c], dtype=object)) for e, c in s.terms.items()}
        return cls(rows, s.denom, 1, s.trunc)

    @classmethod
    def constant(cls, c=1, qtrunc=None):
        return cls.from_terms({(0, 0): c}, qtrunc)

    # access -----------------------------------------------------------------------

    @property
    def qtrunc_exponent(self):
        return None if self.qtrunc is None else Fraction(self.qtrunc, self.qdenom)

    @property
    def terms(self):
        """``{(scaled q exponent, scaled zeta exponent): coefficient}``."""
        out = {}
        for q, (lo, arr) in self.rows.items():
            for i in np.flatnonzero(arr):
                out[(q, lo + int(i))] = arr[i]
        return out

    def items(self):
        """Sorted ``((q exponent, zeta exponent), coefficient)`` with rational exponents."""
        out = []
        for q in sorted(self.rows):
            lo, arr = self.rows[q]
            for i in np.flatnonzero(arr):
                out.append(((Fraction(q, self.qdenom), Fraction(lo + int(i), self.zdenom)), arr[i]))
        return out

    def _check(self, qexp):
        qexp = _frac(qexp)
        if self.qtrunc is not None and qexp * self.qdenom >= self.qtrunc:
            raise TruncationError(
                f"q^{qexp} requested, series exact only below q^{self.qtrunc_exponent}"
            )
        return qexp

    def coefficient(self, qexp, zexp):
        qexp = self._check(qexp)
        zexp = _frac(zexp)
        vq, vz = qexp * self.qdenom, zexp * self.zdenom
        if vq.denominator != 1 or vz.denominator != 1 or int(vq) not in self.rows:
            return 0
        lo, arr = self.rows[int(vq)]
        i = int(vz) - lo
        return arr[i] if 0 <= i < len(arr) else 0

    def row(self, qexp):
        """Zeta-polynomial at ``q^qexp`` as ``{zeta exponent: coefficient}``."""
        qexp = self._check(qexp)
        vq = qexp * self.qdenom
        if vq.denominator != 1 or int(vq) not in self.rows:
            return {}
        lo, arr = self.rows[int(vq)]
        return {Fraction(lo + int(i), self.zdenom): arr[i] for i in np.flatnonzero(arr)}

    def q_exponents(self):
        return [Fraction(q, self.qdenom) for q in sorted(self.rows)]

    def valuation(self):
        if not self.rows:
            return None
        return Fraction(min(self.rows), self.qdenom)

    def _val_bound(self):
        if self.rows:
            return Fraction(min(self.rows), self.qdenom)
        return self.qtrunc_exponent

    def is_zero(self):
        return not self.rows

    def z_range(self, qexp):
        r = self.row(qexp)
        return (min(r), max(r)) if r else None

    # denominators -----------------------------------------------------------------

    def _rows_in(self, qd, zd):
        fq, fz = qd // self.qdenom, zd // self.zdenom
        if fq == 1 and fz == 1:
            return self.rows, self.qtrunc
        rows = {}
        for q, (lo, arr) in self.rows.items():
            if fz != 1:
                wide = np.zeros((len(arr) - 1) * fz + 1, dtype=object)
                wide[::fz] = arr
                arr = wide
            rows[q * fq] = (lo * fz, arr)
        return rows, None if self.qtrunc is None else self.qtrunc * fq

    def _coerce(self, other):
        if isinstance(other, QZetaSeries):
            return other
        if isinstance(other, PuiseuxSeries):
            return QZetaSeries.from_puiseux(other)
        if isinstance(other, Rational):
            return QZetaSeries.constant(other)
        return None

    # arithmetic -------------------------------------------------------------------

    @staticmethod
    def _accumulate(rows, q, lo, arr):
        cur = rows.get(q)
        if cur is None:
            rows[q] = (lo, arr.copy())
            return
        clo, carr = cur
        nlo = min(lo, clo)
        nhi = max(lo + len(arr), clo + len(carr))
        if nlo == clo and nhi == clo + len(carr):
            carr[lo - clo:lo - clo + len(arr)] += arr
            return
        out = np.zeros(nhi - nlo, dtype=object)
        out[clo - nlo:clo - nlo + len(carr)] += carr
        out[lo - nlo:lo - nlo + len(arr)] += arr
        rows[q] = (nlo, out)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        qd, zd = _lcm(self.qdenom, other.qdenom), _lcm(self.zdenom, other.zdenom)
        a, ta = self._rows_in(qd, zd)
        b, tb = other._rows_in(qd, zd)
        out = {}
        for q, (lo, arr) in a.items():
            self._accumulate(out, q, lo, arr)
        for q, (lo, arr) in b.items():
            self._accumulate(out, q, lo, arr)
        return QZetaSeries(out, qd, zd, _min_opt(ta, tb))

    __radd__ = __add__

    def __neg__(self):
        return QZetaSeries({q: (lo, -arr) for q, (lo, arr) in self.rows.items()},
                           self.qdenom, self.zdenom, self.qtrunc)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, (QZetaSeries, PuiseuxSeries)):
            return QZetaSeries({q: (lo, arr * other) for q, (lo, arr) in self.rows.items()},
                               self.qdenom, self.zdenom, self.qtrunc)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        qd, zd = _lcm(self.qdenom, other.qdenom), _lcm(self.zdenom, other.zdenom)
        a, ta = self._rows_in(qd, zd)
        b, tb = other._rows_in(qd, zd)
        va = min(a) if a else ta
        vb = min(b) if b else tb
        trunc = _min_opt(None if ta is None or vb is None else ta + vb,
                         None if tb is None or va is None else tb + va)
        if (ta is not None and vb is None) or (tb is not None and va is None):
            trunc = None
        out = {}
        bq = sorted(b)
        for qa, (loa, arra) in a.items():
            for qb in bq:
                q = qa + qb
                if trunc is not None and q >= trunc:
                    break
                lob, arrb = b[qb]
                self._accumulate(out, q, loa + lob, _conv(arra, arrb))
        return QZetaSeries(out, qd, zd, trunc)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return QZetaSeries.constant(1) / (self ** (-k))
        result = QZetaSeries.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Rational) and not isinstance(other, (QZetaSeries, PuiseuxSeries)):
            return self * (Fraction(1) / other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.divide_exact(other)

    def divide_exact(self, other):
        """Exact quotient; raises ``ValueError`` when ``other`` does not divide ``self``."""
        if other.is_zero():
            raise ZeroDivisionError("division by a zero series")
        qd, zd = _lcm(self.qdenom, other.qdenom), _lcm(self.zdenom, other.zdenom)
        a, ta = self._rows_in(qd, zd)
        b, tb = other._rows_in(qd, zd)
        d0 = min(b)
        lo0, den = b[d0]
        va = min(a) if a else ta
        if va is None:
            return QZetaSeries({}, qd, zd, None)
        trunc = _min_opt(None if ta is None else ta - d0,
                         None if tb is None else tb - 2 * d0 + va)
        if trunc is None:
            # both exact: the quotient must terminate; bound by degree difference
            trunc = max(a) - d0 + 1 if a else 0
            exact_result = True
        else:
            exact_result = False
        work = {q: (lo, arr.copy()) for q, (lo, arr) in a.items()}
        quot = {}
        bq = sorted(q for q in b if q != d0)
        for k in range(va - d0, trunc):
            if k + d0 not in work:
                continue
            lo, num = work.pop(k + d0)
            s = _strip(lo, num)
            if s is None:
                continue
            lo, num = s
            qarr = _poly_divmod(num, den)
            if qarr is None:
                raise ValueError(f"not divisible: q-row {Fraction(k + d0, qd)} has no exact quotient")
            qlo = lo - lo0
            quot[k] = (qlo, qarr)
            for qb in bq:
                if trunc is not None and k + qb >= trunc + d0:
                    break
                lob, arrb = b[qb]
                self._accumulate(work, k + qb, qlo + lob, -_conv(qarr, arrb))
        if exact_result and any(_strip(lo, arr) is not None for lo, arr in work.values()):
            raise ValueError("exact series are not divisible")
        return QZetaSeries(quot, qd, zd, None if exact_result else trunc)

    def inverse(self):
        return QZetaSeries.constant(1) / self

    def shift(self, qexp=0, zexp=0):
        """Multiply by ``q^qexp zeta^zexp``."""
        qexp, zexp = _frac(qexp), _frac(zexp)
        qd = _lcm(self.qdenom, qexp.denominator)
        zd = _lcm(self.zdenom, zexp.denominator)
        rows, trunc = self._rows_in(qd, zd)
        sq, sz = int(qexp * qd), int(zexp * zd)
        return QZetaSeries({q + sq: (lo + sz, arr) for q, (lo, arr) in rows.items()}, qd, zd,
                           None if trunc is None else trunc + sq)

    def subs_zeta(self, d):
        """Substitute ``zeta -> zeta^d`` for a nonzero integer ``d``."""
        d = int(d)
        if d == 0:
            raise ValueError("d must be nonzero")
        m = abs(d)
        rows = {}
        for q, (lo, arr) in self.rows.items():
            if m != 1:
                wide = np.zeros((len(arr) - 1) * m + 1, dtype=object)
                wide[::m] = arr
            else:
                wide = arr
            nlo = lo * m
            if d < 0:
                nlo = -(nlo + len(wide) - 1)
                wide = wide[::-1]
            rows[q] = (nlo, wide)
        return QZetaSeries(rows, self.qdenom, self.zdenom, self.qtrunc)

    def truncate(self, bound):
        bound = _frac(bound)
        if self.qtrunc_exponent is not None and bound > self.qtrunc_exponent:
            bound = self.qtrunc_exponent
        qd = _lcm(self.qdenom, bound.denominator)
        rows, _ = self._rows_in(qd, self.zdenom)
        return QZetaSeries(rows, qd, self.zdenom, int(bound * qd))

    def zeta_specialize(self):
        """Set ``zeta = 1``: the q-series of row sums."""
        return PuiseuxSeries({q: sum(arr) for q, (lo, arr) in self.rows.items()},
                             self.qdenom, self.qtrunc)

    def __eq__(self, other):
        if not isinstance(other, QZetaSeries):
            return NotImplemented
        if (self.qdenom, self.zdenom, self.qtrunc) != (other.qdenom, other.zdenom, other.qtrunc):
            return False
        if self.rows.keys() != other.rows.keys():
            return False
        for q, (lo, arr) in self.rows.items():
            olo, oarr = other.rows[q]
            if lo != olo or len(arr) != len(oarr) or any(arr != oarr):
                return False
        return True

    __hash__ = None

    def __repr__(self):
        tail = "" if self.qtrunc is None else f", exact below q^{self.qtrunc_exponent}"
        return f"QZetaSeries({len(self.rows)} q-rows, {sum(len(a) for _, a in self.rows.values())} slots{tail})"

    # serialization ----------------------------------------------------------------

    def to_dict(self):
        return {
            "qdenom": self.qdenom,
            "zdenom": self.zdenom,
            "qtrunc": self.qtrunc,
            "terms": [[q, z, _coeff_str(c)] for (q, z), c in sorted(self.terms.items())],
        }

    @classmethod
    def from_dict(cls, d):
        grouped = {}
        for q, z, c in d["terms"]:
            grouped.setdefault(int(q), {})[int(z)] = _coeff_parse(c)
        rows = {}
        for q, zs in grouped.items():
            lo = min(zs)
            arr = np.zeros(max(zs) - lo + 1, dtype=object)
            for z, c in zs.items():
                arr[z - lo] = c
            rows[q] = (lo, arr)
        return cls(rows, d["qdenom"], d["zdenom"], d["qtrunc"])


def theta_ez(prec):
    """Odd Jacobi theta series, exact below ``q^prec``.

    Built from the triple-product sum ``sum_n (-1)^n q^((2n+1)^2/8) zeta^((2n+1)/2)``.
    """
    prec = _frac(prec)
    limit = prec * 8
    rows = {}
    m = 1
    while m * m < limit:
        sign = 1 if (m // 2) % 2 == 0 else -1  # m = 2n+1, n >= 0 gives (-1)^n
        arr = np.zeros(2 * m + 1, dtype=object)
        arr[-1] = sign
        arr[0] = -sign
        rows[m * m] = (-m, arr)
        m += 2
    return QZetaSeries(rows, 8, 2, _scaled(prec, 8))


def theta_rescaled(d, prec):
    """``theta(tau, d z)`` exact below ``q^prec``."""
    return theta_ez(prec).subs_zeta(d)


def theta_product(prec):
    """Odd theta series straight from its product expansion (independent of :func:`theta_ez`)."""
    prec = _frac(prec)
    rel = prec - Fraction(1, 8)
    acc = QZetaSeries.from_terms({(0, Fraction(1, 2)): 1, (0, Fraction(-1, 2)): -1}, rel)
    n = 1
    while n < rel:
        for z in (1, -1, 0):
            acc = acc * QZetaSeries.from_terms({(0, 0): 1, (n, z): -1})
        n += 1
    return acc.shift(Fraction(1, 8)).truncate(prec)
