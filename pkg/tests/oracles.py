"""Small independent reference computations used by the tests."""
from fractions import Fraction
from itertools import product


def sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def euler_power(e, n):
    """Coefficients of prod (1 - x^k)^e below x^n via the divisor-sum recurrence."""
    c = [0] * n
    c[0] = 1
    for k in range(1, n):
        s = sum(sigma(j) * c[k - j] for j in range(1, k + 1))
        c[k] = Fraction(-e * s, k)
    return [int(x) for x in c]


def pentagonal(n):
    """prod (1 - x^k) below x^n from the pentagonal number theorem."""
    c = [0] * n
    k = 0
    while True:
        hit = False
        for m in (k, -k) if k else (0,):
            g = m * (3 * m - 1) // 2
            if g < n:
                c[g] = (-1) ** (m % 2)
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return c


def poly_mul(a, b, bound):
    """Multiply dict polynomials keyed by (q8, z2) integer exponents, dropping q8 >= bound."""
    out = {}
    for (qa, za), ca in a.items():
        for (qb, zb), cb in b.items():
            q = qa + qb
            if q < bound:
                out[(q, za + zb)] = out.get((q, za + zb), 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def theta_by_product(qmax):
    """theta with exponents scaled by 8 (q) and 2 (zeta), exact for q < qmax."""
    bound = 8 * qmax
    acc = {(1, 1): 1, (1, -1): -1}
    for n in range(1, qmax + 1):
        for z in (2, -2, 0):
            acc = poly_mul(acc, {(0, 0): 1, (8 * n, z): -1}, bound)
    return acc


def box_vectors(dim, radius):
    return product(range(-radius, radius + 1), repeat=dim)


def quad(gram, v):
    n = len(v)
    return sum(Fraction(gram[i][j]) * v[i] * v[j] for i in range(n) for j in range(n))


def _binom(e, j):
    out = Fraction(1)
    for i in range(j):
        out = out * (e - i) / (i + 1)
    return int(out)


def borcherds_product(coeff, t, A, B, M, N):
    """Literal product q^A zeta^B xi^t prod (1 - q^n zeta^r xi^(t m))^f(nm, r) on m <= M, n <= N.

    ``coeff(n)`` returns the dict ``{r: f(n, r)}``. Keys of the result are
    ``(n, r, m)`` with ``xi`` counted in multiples of ``t``.
    """
    ntop = N + M - 1

    def mul(acc, mono, e):
        # acc * (1 - mono)^e, truncated; mono = (dn, dr, dm)
        dn, dr, dm = mono
        out = dict(acc)
        j = 1
        while j * dm <= M and (dm or j <= 4 * ntop + 8):
            c = (-1) ** j * _binom(e, j)
            if c == 0:
                break
            for (n, r, m), v in acc.items():
                key = (n + j * dn, r + j * dr, m + j * dm)
                if key[2] <= M and key[0] <= ntop:
                    out[key] = out.get(key, 0) + c * v
            j += 1
        return {k: v for k, v in out.items() if v}

    acc = {(A, B, 1): 1}
    row0 = coeff(0)
    for r, e in row0.items():
        if r < 0 and e:
            acc = mul(acc, (0, r, 0), e)
    for n in range(1, N - A + M):
        for r, e in row0.items():
            if e:
                acc = mul(acc, (n, r, 0), e)
    for m in range(1, M):
        for n in range(-1, ntop + 1):
            if A + n - (M - 1 - m) > N:
                break
            for r, e in coeff(n * m).items():
                if e:
                    acc = mul(acc, (n, r, m), e)
    return {k: v for k, v in acc.items() if k[0] <= N}
