import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from paraborch.jacobi import pullback
from paraborch.lattice import disc_reduce, short_vectors
from paraborch.paramodular import lattice_form
from paraborch.weil import (CASES, LatticeJacobiForm, combined_multiplier, get_case, jacobi_coefficient, lift,
                            multiplier_numeric_check)

from oracles import euler_power

J_COEFFS = [1, 196884, 21493760, 864299970]  # q^-1, q, q^2, q^3 of the j-invariant


@pytest.mark.parametrize("name", ["A6_7", "2A4_5"])
def test_multiplier_is_one(name):
    case = get_case(name)
    assert combined_multiplier(case) == 1
    assert multiplier_numeric_check(case) < 1e-12


def test_aliases():
    assert get_case("A6") is get_case("A6_7")
    assert get_case("A4A4") is get_case("2A4_5")
    with pytest.raises(ValueError):
        get_case("E8")


@pytest.mark.parametrize("name,rank", [("A6_7", 6), ("2A4_5", 8)])
def test_zero_component_head(name, rank):
    case = get_case(name)
    form = lift(case, 2)
    zc = form.zero_component
    assert zc.valuation() == -1
    assert zc.coefficient(-1) == 1
    # half of the constant comes from the eta quotient itself
    assert form.f_series.coefficient(0) == -case.k == euler_power(case.k, 2)[1]
    assert zc.coefficient(0) == rank


def test_nonzero_components_lead():
    form = lift(get_case("A6_7"), 2)
    g = form.residues
    assert g[6].valuation() == Fraction(-1, 7)
    assert g[6].coefficient(Fraction(-1, 7)) == 1
    for t in range(1, 6):
        assert g[t].valuation() >= 0


@pytest.mark.parametrize("name", ["A6_7", "2A4_5"])
def test_components_transform_under_translation(name):
    form = lift(get_case(name), 3)
    for t, nm in enumerate(form.class_norms()):
        for e, _ in form.residues[t].items():
            assert (e + nm / 2).denominator == 1


@pytest.mark.parametrize("name,rank", [("A6_7", 6), ("2A4_5", 8)])
def test_zero_specialisation_is_j_plus_constant(name, rank):
    phi = pullback(lattice_form(name, 4), [0] * rank, qtrunc=4)
    assert [phi.coefficient(n, 0) for n in (-1, 1, 2, 3)] == J_COEFFS
    assert phi.coefficient(0, 0) == 48


def test_values_on_short_dual_vectors():
    case = get_case("A6_7")
    psi = lattice_form(case, 2)
    dual = case.lattice.dual()
    assert psi.coefficient(-1, [0] * 6) == 1
    assert psi.coefficient(0, [0] * 6) == 6
    for c, n in short_vectors(dual, Fraction(16, 7)):
        val = psi.coefficient(0, c)
        if n == Fraction(2, 7):
            assert val == 1
        elif n == Fraction(16, 7):
            assert val == 0


def test_pole_only_at_origin():
    case = get_case("A6_7")
    psi = lattice_form(case, 1)
    for c, _ in short_vectors(case.lattice.dual(), 2):
        assert psi.coefficient(-1, c) == 0


def test_function_and_class_form_agree():
    case = get_case("2A4_5")
    form = lift(case, 2)
    psi = LatticeJacobiForm(form)
    for c, _ in short_vectors(case.lattice.dual(), Fraction(8, 5))[:200]:
        assert psi.coefficient(1, c) == jacobi_coefficient(form, case.lattice, 1, c)


def test_json_export():
    d = json.loads(lift(get_case("A6_7"), 1).to_json())
    assert d["multiplier"] == "1"
    assert len(d["classes"]) == 8
    assert d["classes"][0]["zero"]


def _reflect(c, i, cartan):
    s = sum(cartan[i][j] * c[j] for j in range(len(c)))
    return [x - s if j == i else x for j, x in enumerate(c)]


vec6 = st.lists(st.integers(min_value=-4, max_value=4), min_size=6, max_size=6)


@given(vec6, st.integers(min_value=0, max_value=5), st.integers(min_value=-1, max_value=2))
def test_coefficients_invariant_under_root_reflections(c, i, n):
    case = get_case("A6_7")
    psi = lattice_form(case, 3)
    cartan = case.roots.cartan
    assert psi.coefficient(n, c) == psi.coefficient(n, _reflect(c, i, cartan))
    assert psi.coefficient(n, c) == psi.coefficient(n, c[::-1])
    assert psi.coefficient(n, c) == psi.coefficient(n, [-x for x in c])


@given(vec6, st.integers(min_value=-1, max_value=2))
def test_support_bound(c, n):
    case = get_case("A6_7")
    psi = lattice_form(case, 3)
    if case.lattice.dual().norm(c) > 2 * n + 2:
        assert psi.coefficient(n, c) == 0


@given(vec6)
def test_reflections_preserve_class_norm(c):
    case = get_case("A6_7")
    img = _reflect(c, 2, case.roots.cartan)
    assert disc_reduce(case.lattice, c).norm_mod2 == disc_reduce(case.lattice, img).norm_mod2
