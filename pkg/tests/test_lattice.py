from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from paraborch.lattice import (Lattice, a4a4_dual_5, a6_dual_7, disc_reduce, discriminant_norm_counts,
                               lattice_from_config, root_sum, root_system, short_vectors, short_vectors_array,
                               theta_series)


def brute_counts(lat, radius, max_norm):
    """Norm counts over a coordinate box, exact integer arithmetic on the scaled Gram."""
    d = 1
    for row in lat.gram:
        for x in row:
            d = d * x.denominator
    g = np.array([[int(x * d) for x in row] for row in lat.gram], dtype=np.int64)
    r = np.arange(-radius, radius + 1)
    grid = np.stack(np.meshgrid(*[r] * lat.rank, indexing="ij"), -1).reshape(-1, lat.rank)
    norms = np.einsum("ij,jk,ik->i", grid, g, grid)
    out = {}
    for m in norms.tolist():
        f = Fraction(m, d)
        if 0 < f <= max_norm:
            out[f] = out.get(f, 0) + 1
    return out


def test_root_counts():
    assert len(root_system(6).positive_roots) == 21
    assert len(root_system(4).positive_root_coords) == 10
    assert len(root_sum(root_system(4), root_system(4)).positive_root_coords) == 20


def test_fundamental_weights_are_dual_to_simple_roots():
    rs = root_system(6)
    for i, w in enumerate(rs.fundamental_weights):
        for j, a in enumerate(rs.simple_roots):
            assert sum(x * y for x, y in zip(w, a)) == (1 if i == j else 0)


def test_lattice_invariants():
    lat = a6_dual_7()
    assert lat.rank == 6 and lat.even
    assert lat.det == 7 ** 5
    assert lat.level == 7
    l4 = a4a4_dual_5()
    assert l4.det == 5 ** 6 and l4.level == 5


def test_config_builds_the_same_lattices():
    assert lattice_from_config({"base": "A6", "dual": True, "scale": 7}).gram == a6_dual_7().gram
    assert lattice_from_config({"base": "A4", "dual": True, "scale": 5, "copies": 2}).gram == a4a4_dual_5().gram


def test_rejects_odd_or_indefinite():
    with pytest.raises(ValueError):
        Lattice(((1,),), even=True)
    with pytest.raises(ValueError):
        Lattice(((2, 3), (3, 2)))


def test_minimal_vectors_of_dual():
    vecs = short_vectors(a6_dual_7().dual(), Fraction(2, 7))
    assert len(vecs) == 42
    assert {n for _, n in vecs} == {Fraction(2, 7)}


def test_minimal_vectors_of_lattice():
    vecs = short_vectors(a6_dual_7(), 6)
    assert len(vecs) == 14
    assert short_vectors(a6_dual_7(), 0) == []


def test_short_vectors_match_box_enumeration():
    lat = a6_dual_7()
    got = {}
    for _, n in short_vectors(lat, 12):
        got[n] = got.get(n, 0) + 1
    assert got == brute_counts(lat, 2, 12)


def test_dual_short_vectors_match_box_enumeration():
    dual = a6_dual_7().dual()
    got = {}
    for _, n in short_vectors(dual, 2):
        got[n] = got.get(n, 0) + 1
    assert got == brute_counts(dual, 4, 2)


def test_theta_series_head():
    th = theta_series(a6_dual_7(), 7)
    assert [th.coefficient(e) for e in range(7)] == [1, 0, 0, 14, 0, 42, 70]


def test_short_vectors_sorted_and_exact():
    xs, norms, scale = short_vectors_array(a6_dual_7().dual(), 1, include_zero=True)
    assert not xs[0].any() and norms[0] == 0
    assert (np.diff(norms) >= 0).all()
    lat = a6_dual_7().dual()
    for x, m in zip(xs[:50].tolist(), norms[:50].tolist()):
        assert lat.norm(x) == Fraction(m, scale)


def test_discriminant_class_counts_a6():
    counts = discriminant_norm_counts(a6_dual_7())
    assert sum(counts.values()) == 7 ** 5
    assert counts[Fraction(2, 7)] == 2352


def test_discriminant_class_counts_a4a4():
    assert sum(discriminant_norm_counts(a4a4_dual_5()).values()) == 5 ** 6


def test_class_index():
    cls = disc_reduce(a6_dual_7(), [1, 0, 0, 0, 0, 0])
    assert cls.norm_mod2 == Fraction(2, 7)
    assert not cls.is_zero
    assert cls.j_index(7) == 6
    assert disc_reduce(a6_dual_7(), [0] * 6).is_zero


vec6 = st.lists(st.integers(min_value=-6, max_value=6), min_size=6, max_size=6)


@given(vec6, vec6)
def test_class_invariant_under_lattice_translation(c, w):
    lat = a6_dual_7()
    # a lattice vector with basis coordinates w has dual coordinates G w
    gw = [int(sum(lat.gram[i][j] * w[j] for j in range(6))) for i in range(6)]
    moved = [x + y for x, y in zip(c, gw)]
    assert disc_reduce(lat, c) == disc_reduce(lat, moved)


@given(vec6)
def test_class_norm_matches_vector_norm(c):
    lat = a6_dual_7()
    assert disc_reduce(lat, c).norm_mod2 == lat.dual().norm(c) % 2


@given(st.fractions(min_value=0, max_value=3, max_denominator=7))
def test_short_vectors_closed_under_negation(bound):
    vecs = {v for v, _ in short_vectors(a6_dual_7().dual(), bound)}
    assert vecs == {tuple(-x for x in v) for v in vecs}


@given(st.fractions(min_value=0, max_value=2, max_denominator=7), st.fractions(min_value=0, max_value=2, max_denominator=7))
def test_short_vectors_monotone(a, b):
    lo, hi = sorted((a, b))
    dual = a6_dual_7().dual()
    small = {v for v, _ in short_vectors(dual, lo)}
    big = {v for v, _ in short_vectors(dual, hi)}
    assert small <= big
    assert all(n <= lo for _, n in short_vectors(dual, lo))


@given(st.integers(min_value=1, max_value=8))
def test_theta_series_counts_short_vectors(n):
    lat = a6_dual_7()
    th = theta_series(lat, n + 1)
    assert 1 + sum(th.coefficient(e) for e in range(1, n + 1)) == 1 + len(short_vectors(lat, 2 * n))
