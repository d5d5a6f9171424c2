"""End-to-end criteria, each run at its stated tolerance and time limit."""
import random

import pytest

from paraborch.acceptance import NAMED_VECTORS, run_check
from paraborch.jacobi import index_formula, linear_forms
from paraborch.weil import get_case


def _run(number, capsys):
    res = run_check(number)
    with capsys.disabled():
        print("\n" + res.line())
    return res


def test_criterion_01_eta_identity(capsys):
    assert _run(1, capsys).passed


def test_criterion_02_lift_shape(capsys):
    assert _run(2, capsys).passed


def test_criterion_03_multiplier(capsys):
    assert _run(3, capsys).passed


@pytest.mark.xfail(strict=True, reason="the listed vector for level 152 has index 98; no unique one-entry "
                                       "correction exists, so it is kept as printed")
def test_criterion_04_index_formula(capsys):
    assert _run(4, capsys).passed


def test_criterion_04_random_agreement():
    case = get_case("A6_7")
    rng = random.Random(20260)
    for _ in range(1000):
        a = [rng.randint(-9, 9) for _ in range(6)]
        assert index_formula(a) == linear_forms(case, a).index == case.lattice.norm(a) / 2


@pytest.mark.parametrize("t", [98, 122, 138, 146, 147])
def test_criterion_04_named_vectors(t):
    assert index_formula(NAMED_VECTORS[t]) == t


def test_criterion_04_level_152_vector_gives_98():
    assert index_formula(NAMED_VECTORS[152]) == 98


def test_criterion_05_first_fourier_jacobi(capsys):
    assert _run(5, capsys).passed


def test_criterion_06_antisymmetry(capsys):
    assert _run(6, capsys).passed


def test_criterion_07_cuspidality(capsys):
    assert _run(7, capsys).passed


def test_criterion_08_tables(capsys):
    assert _run(8, capsys).passed


def test_criterion_09_divisor_multiplicity(capsys):
    assert _run(9, capsys).passed


def test_criterion_10_holomorphy(capsys):
    assert _run(10, capsys).passed
