"""Positive definite lattices, A-type root systems, short vectors and discriminant groups."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt

import numpy as np

from .series import PuiseuxSeries

__all__ = [
    "RootSystemA",
    "RootSystemSum",
    "root_system",
    "root_sum",
    "Lattice",
    "DiscClass",
    "short_vectors",
    "short_vectors_array",
    "disc_reduce",
    "discriminant_norm_counts",
    "theta_series",
    "lattice_from_config",
    "a6_dual_7",
    "a4a4_dual_5",
]


def _lcm(a, b):
    return a * b // gcd(a, b)


def _fmat(rows):
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def _det(m):
    a = [list(r) for r in m]
    n = len(a)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det *= a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] / a[i][i]
            if f:
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    return det


def _inverse(m):
    n = len(m)
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for i in range(n):
        piv = next(r for r in range(i, n) if a[r][i] != 0)
        a[i], a[piv] = a[piv], a[i]
        p = a[i][i]
        a[i] = [x / p for x in a[i]]
        for r in range(n):
            if r != i and a[r][i] != 0:
                f = a[r][i]
                a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return tuple(tuple(r[n:]) for r in a)


# ---------------------------------------------------------------------------
# root systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootSystemA:
    """Root system A_n realised in the sum-zero hyperplane of Z^(n+1)."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("rank must be at least 1")

    @property
    def rank(self) -> int:
        return self.n

    @property
    def name(self) -> str:
        return f"A{self.n}"

    @cached_property
    def simple_roots(self) -> tuple:
        n = self.n
        return tuple(tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n + 1)) for i in range(n))

    @cached_property
    def positive_roots(self) -> tuple:
        n = self.n
        return tuple(tuple(1 if k == i else -1 if k == j + 1 else 0 for k in range(n + 1))
                     for i in range(n) for j in range(i, n))

    @cached_property
    def positive_root_coords(self) -> tuple:
        """Positive roots in the simple-root basis, ordered as ``alpha_i + ... + alpha_j``."""
        n = self.n
        return tuple(tuple(1 if i <= s <= j else 0 for s in range(n)) for i in range(n) for j in range(i, n))

    @cached_property
    def fundamental_weights(self) -> tuple:
        # w_j = e_1 + ... + e_j - j/(n+1) (1, ..., 1)
        n = self.n
        return tuple(tuple(Fraction(int(k < j)) - Fraction(j, n + 1) for k in range(n + 1))
                     for j in range(1, n + 1))

    @cached_property
    def cartan(self) -> tuple:
        n = self.n
        return tuple(tuple(2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class RootSystemSum:
    """Orthogonal direct sum of A-type root systems."""

    parts: tuple

    @property
    def rank(self) -> int:
        return sum(p.rank for p in self.parts)

    @property
    def name(self) -> str:
        c = Counter(p.name for p in self.parts)
        return "+".join((f"{m}{k}" if m > 1 else k) for k, m in c.items())

    @cached_property
    def positive_root_coords(self) -> tuple:
        out = []
        off = 0
        for p in self.parts:
            for c in p.positive_root_coords:
                out.append((0,) * off + c + (0,) * (self.rank - off - p.rank))
            off += p.rank
        return tuple(out)

    @cached_property
    def cartan(self) -> tuple:
        m = [[0] * self.rank for _ in range(self.rank)]
        off = 0
        for p in self.parts:
            for i, row in enumerate(p.cartan):
                for j, x in enumerate(row):
                    m[off + i][off + j] = x
            off += p.rank
        return tuple(tuple(r) for r in m)


def root_system(n: int) -> RootSystemA:
    return RootSystemA(n)


def root_sum(*parts) -> RootSystemSum:
    return RootSystemSum(tuple(parts))


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lattice:
    """Lattice given by a rational Gram matrix in a fixed basis.

    Vectors of the dual lattice are addressed by *dual coordinates*: integer
    vectors ``c`` with respect to the dual basis, so ``<c, c> = c^T G^{-1} c``
    and ``<c, a> = c . a`` for ``a`` in basis coordinates.
    """

    gram: tuple
    label: str = ""
    even: bool = False

    def __post_init__(self):
        g = _fmat(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(r) != n for r in g) or any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be square and symmetric")
        for k in range(1, n + 1):
            if _det([r[:k] for r in g[:k]]) <= 0:
                raise ValueError("Gram matrix is not positive definite")
        if self.even:
            if any(x.denominator != 1 for r in g for x in r) or any(g[i][i] % 2 for i in range(n)):
                raise ValueError("lattice declared even but Gram matrix is not even integral")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> Fraction:
        return _det(self.gram)

    @cached_property
    def gram_inverse(self) -> tuple:
        return _inverse(self.gram)

    @cached_property
    def _scaled_gram(self):
        d = 1
        for r in self.gram:
            for x in r:
                d = _lcm(d, x.denominator)
        return np.array([[int(x * d) for x in r] for r in self.gram], dtype=np.int64), d

    def norm(self, v) -> Fraction:
        g = self.gram
        n = self.rank
        return sum(Fraction(v[i]) * g[i][j] * v[j] for i in range(n) for j in range(n))

    def inner(self, u, v) -> Fraction:
        g = self.gram
        n = self.rank
        return sum(Fraction(u[i]) * g[i][j] * v[j] for i in range(n) for j in range(n))

    def dual(self) -> "Lattice":
        return Lattice(self.gram_inverse, f"{self.label}^#", even=False)

    def scaled(self, k) -> "Lattice":
        k = Fraction(k)
        g = tuple(tuple(k * x for x in r) for r in self.gram)
        even = all(x.denominator == 1 for r in g for x in r) and all(g[i][i] % 2 == 0 for i in range(self.rank))
        return Lattice(g, f"{self.label}({k})", even=even)

    def direct_sum(self, other: "Lattice") -> "Lattice":
        n, m = self.rank, other.rank
        g = [[Fraction(0)] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                g[i][j] = self.gram[i][j]
        for i in range(m):
            for j in range(m):
                g[n + i][n + j] = other.gram[i][j]
        return Lattice(g, f"{self.label}+{other.label}", even=self.even and other.even)

    @cached_property
    def level(self) -> int:
        """Smallest N with N <x, x>/2 integral on the dual lattice."""
        gi = self.gram_inverse
        d = 1
        for i, r in enumerate(gi):
            d = _lcm(d, (r[i] / 2).denominator)
            for j, x in enumerate(r):
                if i != j:
                    d = _lcm(d, x.denominator)
        return d

    def gram_json(self) -> str:
        return json.dumps([[str(x) for x in r] for r in self.gram])

    @classmethod
    def from_gram_json(cls, s, label="", even=False):
        return cls(tuple(tuple(Fraction(x) for x in r) for r in json.loads(s)), label, even)


def lattice_from_config(cfg) -> Lattice:
    """Build a lattice from ``{"base": "A_n", "dual": bool, "scale": k, "copies": m}``."""
    if isinstance(cfg, str):
        cfg = json.loads(cfg)
    base = cfg["base"].replace("_", "")
    if not base.startswith("A"):
        raise ValueError(f"unsupported base {cfg['base']!r}")
    n = int(base[1:])
    rs = root_system(n)
    g = _fmat(rs.cartan)
    label = f"A{n}"
    if cfg.get("dual", False):
        g = _inverse(g)
        label += "v"
    scale = Fraction(cfg.get("scale", 1))
    g = tuple(tuple(scale * x for x in r) for r in g)
    if scale != 1:
        label += f"({scale})"
    even = all(x.denominator == 1 for r in g for x in r) and all(g[i][i] % 2 == 0 for i in range(n))
    lat = Lattice(g, label, even)
    copies = int(cfg.get("copies", 1))
    out = lat
    for _ in range(copies - 1):
        out = out.direct_sum(lat)
    if copies > 1:
        out = Lattice(out.gram, f"{copies}{label}", out.even)
    return out


def a6_dual_7() -> Lattice:
    return lattice_from_config({"base": "A_6", "dual": True, "scale": 7})


def a4a4_dual_5() -> Lattice:
    return lattice_from_config({"base": "A_4", "dual": True, "scale": 5, "copies": 2})


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _quadratic_form(gram):
    # x^T G x = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
    a = np.array([[float(x) for x in r] for r in gram])
    n = len(a)
    q = a.copy()
    for i in range(n):
        for j in range(i + 1, n):
            q[j, i] = q[i, j]
            q[i, j] = q[i, j] / q[i, i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k, l] -= q[k, i] * q[i, l]
    return q


def short_vectors_array(lat: Lattice, max_norm, include_zero: bool = False):
    """All lattice vectors with norm at most ``max_norm``.

    Returns ``(vectors, scaled_norms, scale)``: an int64 array of basis
    coordinates, the exact norms multiplied by ``scale`` and the integer
    ``scale``.  Rows are sorted by norm then lexicographically.
    """
    max_norm = Fraction(max_norm)
    n = lat.rank
    gi, scale = lat._scaled_gram
    if max_norm < 0 or (max_norm == 0 and not include_zero):
        return np.zeros((0, n), dtype=np.int64), np.zeros(0, dtype=np.int64), scale
    q = _quadratic_form(lat.gram)
    bound = float(max_norm) * (1 + 1e-9) + 1e-9
    # partial vectors for coordinates i..n-1, built from the last coordinate down
    xs = np.zeros((1, 0), dtype=np.int64)
    rem = np.array([bound])
    for i in range(n - 1, -1, -1):
        tail = xs.astype(float)
        centre = -(tail @ q[i, i + 1:]) if i + 1 < n else np.zeros(len(xs))
        rad = np.sqrt(np.maximum(rem, 0.0) / q[i, i])
        lo = np.ceil(centre - rad - 1e-9).astype(np.int64)
        hi = np.floor(centre + rad + 1e-9).astype(np.int64)
        cnt = np.maximum(hi - lo + 1, 0)
        keep = cnt > 0
        xs, rem, lo, cnt, centre = xs[keep], rem[keep], lo[keep], cnt[keep], centre[keep]
        idx = np.repeat(np.arange(len(xs)), cnt)
        start = np.repeat(np.cumsum(cnt) - cnt, cnt)
        xi = lo[idx] + (np.arange(len(idx)) - start)
        new_rem = rem[idx] - q[i, i] * (xi - centre[idx]) ** 2
        xs = np.concatenate([xi[:, None], xs[idx]], axis=1)
        rem = new_rem
    norms = np.einsum("ij,jk,ik->i", xs, gi, xs)
    limit = int(max_norm * scale)
    sel = norms <= limit
    if not include_zero:
        sel &= norms > 0
    xs, norms = xs[sel], norms[sel]
    order = np.lexsort(tuple(xs[:, k] for k in range(n - 1, -1, -1)) + (norms,))
    return xs[order], norms[order], scale


def short_vectors(lat: Lattice, max_norm):
    """All nonzero ``(vector, norm)`` with norm at most ``max_norm``; sorted by norm."""
    xs, norms, scale = short_vectors_array(lat, max_norm)
    return [(tuple(int(x) for x in v), Fraction(int(m), scale)) for v, m in zip(xs, norms)]


def theta_series(lat: Lattice, prec) -> PuiseuxSeries:
    """Sum of ``q^(<v,v>/2)`` over the lattice, exact below ``q^prec``."""
    prec = Fraction(prec)
    xs, norms, scale = short_vectors_array(lat, 2 * prec, include_zero=True)
    terms = Counter(int(m) for m in norms)
    return PuiseuxSeries.from_exponents({Fraction(m, 2 * scale): c for m, c in terms.items()}, prec)


# ---------------------------------------------------------------------------
# discriminant group
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class DiscClass:
    """Class of a dual vector modulo the lattice.

    ``rep`` is the fractional part of the vector in basis coordinates, which
    is a canonical representative of the coset.
    """

    rep: tuple
    norm_mod2: Fraction = field(compare=False)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.rep)

    def j_index(self, p: int) -> int:
        """``p * (-norm/2 mod 1)``, the residue class of the exponents of this component."""
        v = (-self.norm_mod2 / 2) % 1 * p
        if v.denominator != 1:
            raise ValueError(f"norm {self.norm_mod2} incompatible with level {p}")
        return int(v)


def disc_reduce(lat: Lattice, v, coords: str = "dual") -> DiscClass:
    """Reduce a vector of the dual lattice to its discriminant class.

    ``coords="dual"`` expects integer dual coordinates; ``coords="basis"``
    accepts rational basis coordinates and checks membership in the dual.
    """
    n = lat.rank
    if coords == "dual":
        if any(Fraction(x).denominator != 1 for x in v):
            raise ValueError("dual coordinates must be integers")
        gi = lat.gram_inverse
        x = [sum(gi[i][j] * int(v[j]) for j in range(n)) for i in range(n)]
    elif coords == "basis":
        x = [Fraction(t) for t in v]
        g = lat.gram
        if any(sum(g[i][j] * x[j] for j in range(n)).denominator != 1 for i in range(n)):
            raise ValueError("vector does not lie in the dual lattice")
    else:
        raise ValueError("coords must be 'dual' or 'basis'")
    rep = tuple(t - (t.numerator // t.denominator) for t in x)
    return DiscClass(rep, lat.norm(rep) % 2)


def discriminant_norm_counts(lat: Lattice) -> Counter:
    """Count discriminant classes by norm mod 2 (full scan of the group)."""
    n = lat.rank
    gi = lat.gram_inverse
    d = 1
    for r in gi:
        for x in r:
            d = _lcm(d, x.denominator)
    k = np.array([[int(x * d) for x in r] for r in gi], dtype=np.int64)
    grid = np.stack(np.meshgrid(*([np.arange(d)] * n), indexing="ij"), -1).reshape(-1, n)
    reps = np.unique((grid @ k.T) % d, axis=0)
    gs, scale = lat._scaled_gram
    norms = np.einsum("ij,jk,ik->i", reps, gs, reps)  # scale * d^2 * <x, x>
    mod = 2 * scale * d * d
    out = Counter()
    for m, c in zip(*np.unique(norms % mod, return_counts=True)):
        out[Fraction(int(m), scale * d * d)] += int(c)
    return out
