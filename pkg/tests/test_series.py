from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from paraborch.series import (PuiseuxSeries, QZetaSeries, TruncationError, eta, eta_quotient,
                              residue_components, theta_ez, theta_product, theta_rescaled)

from oracles import euler_power, pentagonal, theta_by_product


def test_eta_leading_term():
    e = eta(10)
    assert e.denom == 24
    assert e.items()[0] == (Fraction(1, 24), 1)


def test_eta_matches_pentagonal_numbers():
    e = eta(30)
    ref = pentagonal(30)
    for n in range(30):
        assert e.coefficient(Fraction(1, 24) + n) == ref[n]
    assert e.coefficient(Fraction(1, 24) + 3) == 0


def test_eta_times_inverse_is_one():
    e = eta(10)
    assert (e * e.inverse()).items() == [(0, 1)]


def test_reading_past_truncation_raises():
    e = eta(5)
    with pytest.raises(TruncationError):
        e.coefficient(5)
    with pytest.raises(TruncationError):
        e.coefficient(Fraction(121, 24))
    assert e.coefficient(-3) == 0


def test_eta_quotient_level_seven():
    s = eta_quotient([(1, -3), (7, -3)], 6)
    inv = euler_power(-3, 7)
    inv7 = [0] * 7
    inv7[0] = 1  # (1 - q^7n)^-3 contributes only from q^7 on
    assert s.valuation() == -1
    for n in range(6):
        assert s.coefficient(n - 1) == inv[n]
    assert s.coefficient(0) == 3


def test_eta_quotient_scaled_argument():
    s = eta_quotient([(1, -3), (Fraction(1, 7), -3)], 3)
    assert s.valuation() == Fraction(-1, 7)
    assert s.coefficient(Fraction(-1, 7)) == 1
    # in x = q^(1/7): x^-1 prod (1 - x^7n)^-3 (1 - x^n)^-3
    small = euler_power(-3, 22)
    big = [0] * 22
    for i, c in enumerate(euler_power(-3, 4)):
        big[7 * i] = c
    ref = [sum(small[j] * big[k - j] for j in range(k + 1)) for k in range(22)]
    for k in range(22):
        assert s.coefficient(Fraction(k - 1, 7)) == ref[k]


def test_eta_24_has_integer_exponents():
    d = eta_quotient([(1, 24)], 5)
    assert d.denom == 1
    assert d.items()[:3] == [(1, 1), (2, -24), (3, 252)]


def test_pow_matches_repeated_mul():
    e = eta(6)
    acc = PuiseuxSeries.constant(1)
    for _ in range(24):
        acc = acc * e
    assert e ** 24 == acc


def test_eta_scale_must_be_integral_or_reciprocal():
    with pytest.raises(ValueError):
        eta_quotient([(Fraction(2, 3), 1)], 4)


def test_residue_components_of_level_seven_series():
    s = eta_quotient([(1, -3), (Fraction(1, 7), -3)], 3)
    g = residue_components(s, 7)
    assert g[6].coefficient(Fraction(-1, 7)) == 1
    assert g[0].coefficient(0) == 3
    assert sum(g[1:], g[0]) == s


def test_residue_components_trivial_modulus():
    s = eta_quotient([(1, 24)], 4)
    assert residue_components(s, 1) == [s]


def test_residue_components_rejects_off_grid():
    with pytest.raises(ValueError):
        residue_components(eta(3), 7)


def test_theta_leading_terms():
    th = theta_ez(4)
    assert th.coefficient(Fraction(1, 8), Fraction(1, 2)) == 1
    assert th.coefficient(Fraction(1, 8), Fraction(-1, 2)) == -1
    assert th.coefficient(Fraction(9, 8), Fraction(3, 2)) == -1


def test_theta_is_odd():
    assert theta_rescaled(-1, 6) == -theta_ez(6)


def test_theta_sum_matches_product():
    assert theta_ez(7) == theta_product(7)
    ref = theta_by_product(6)
    th = theta_ez(6)
    assert {(q, z): c for (q, z), c in th.terms.items()} == ref


def test_theta_divided_by_leading_factor():
    th = theta_ez(8)
    lead = QZetaSeries.from_terms({(Fraction(1, 8), Fraction(1, 2)): 1, (Fraction(1, 8), Fraction(-1, 2)): -1})
    unit = th / lead
    assert unit.coefficient(0, 0) == 1
    assert all(isinstance(c, int) for _, c in unit.items())


def test_theta_over_theta():
    th = theta_ez(5)
    assert (th / th).items() == [((0, 0), 1)]
    with pytest.raises(ValueError):
        th.inverse()


def test_block_division_round_trip():
    blk = theta_ez(4) ** 3 * theta_rescaled(2, 4)
    e15 = eta_quotient([(1, 15)], 6)
    back = (blk / e15) * e15
    assert back == blk.truncate(back.qtrunc_exponent)


def test_json_round_trip():
    s = eta_quotient([(1, -4), (Fraction(1, 5), -4)], 3)
    assert PuiseuxSeries.from_json(s.to_json()) == s
    th = theta_rescaled(3, 4) * theta_ez(4)
    assert QZetaSeries.from_dict(th.to_dict()) == th


# --- properties -------------------------------------------------------------

exps = st.fractions(min_value=-3, max_value=3, max_denominator=6)
coeffs = st.integers(min_value=-5, max_value=5)


@st.composite
def series(draw, unit=False):
    terms = draw(st.dictionaries(exps, coeffs, max_size=6))
    trunc = draw(st.fractions(min_value=1, max_value=5, max_denominator=6))
    if unit:
        terms = {e + 1: c for e, c in terms.items() if e + 1 > 0}
        terms[0] = draw(st.sampled_from([1, -1]))
        return PuiseuxSeries.from_exponents(terms, trunc).shift(draw(exps))
    return PuiseuxSeries.from_exponents(terms, trunc)


@given(series(), series(), series())
def test_multiplication_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(series(), series(), series())
def test_distributivity_on_common_range(a, b, c):
    left = a * (b + c)
    right = a * b + a * c
    bound = min(left.trunc_exponent, right.trunc_exponent)
    assert left.truncate(bound) == right.truncate(bound)


@given(series(unit=True))
def test_unit_times_inverse(u):
    one = u * u.inverse()
    assert [(e, c) for e, c in one.items()] == [(0, 1)]


@given(st.dictionaries(st.integers(min_value=-20, max_value=20), coeffs, max_size=8),
       st.integers(min_value=1, max_value=6))
def test_residue_components_partition(terms, p):
    s = PuiseuxSeries.from_exponents({Fraction(n, p): c for n, c in terms.items()}, 4)
    parts = residue_components(s, p)
    assert len(parts) == p
    total = parts[0]
    for g in parts[1:]:
        total = total + g
    assert total == s
    for t, g in enumerate(parts):
        for e, _ in g.items():
            assert (e * p - t) % p == 0


@given(series())
def test_series_json_round_trip(s):
    assert PuiseuxSeries.from_json(s.to_json()) == s


@given(st.lists(st.integers(min_value=-4, max_value=4).filter(bool), min_size=1, max_size=4))
def test_theta_products_have_zeta_parity(ds):
    acc = QZetaSeries.constant(1)
    for d in ds:
        acc = acc * theta_rescaled(d, 3)
    sign = (-1) ** len(ds)
    terms = dict(acc.items())
    for (qe, ze), c in terms.items():
        assert terms.get((qe, -ze), 0) == sign * c
