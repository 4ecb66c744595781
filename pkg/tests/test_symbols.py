import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from speclab.analysis import Monomial, Polynomial
from speclab.errors import NotHermitianSymbol
from speclab.sequences import PERIODIC_BACKGROUNDS, FREE_BACKGROUND, PeriodicBackground
from speclab.symbols import (
    IntervalUnion,
    MatrixSymbol,
    arcsine_functional,
    eigenvalue_curves,
    essential_range,
    evaluate,
    fourier_coefficient,
    periodic_symbol,
    scalar_symbol,
    symbol_functional,
)

FREE = periodic_symbol(FREE_BACKGROUND)


def test_free_symbol_coefficients():
    assert FREE.k == 1
    assert set(FREE.coeffs) == {-1, 1}
    assert FREE.coefficient(1)[0, 0] == 1 and FREE.coefficient(0)[0, 0] == 0
    assert FREE.is_hermitian


def test_scalar_symbol_shift():
    sym = periodic_symbol(PeriodicBackground((0.7,), (0.3,)))
    t = np.linspace(-np.pi, np.pi, 9)
    assert np.allclose(evaluate(sym, t)[:, 0, 0], 0.3 + 1.4 * np.cos(t), atol=1e-15)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_three_coefficients(k):
    bg = PeriodicBackground(tuple(range(1, k + 1)), (0.5,) * k)
    sym = periodic_symbol(bg)
    assert sorted(sym.coeffs) == [-1, 0, 1]
    assert sym.is_hermitian


def test_evaluate_examples():
    assert evaluate(FREE, 0.0)[0, 0] == 2
    assert abs(evaluate(FREE, np.pi / 2)[0, 0]) < 1e-15
    sym = periodic_symbol(PeriodicBackground((1, 1), (0, 0)))
    for t in (-2.0, 0.3, 1.7):
        expected = np.array([[0, 1 + np.exp(1j * t)], [1 + np.exp(-1j * t), 0]])
        assert np.allclose(evaluate(sym, t), expected, atol=1e-15)


def test_curves_examples():
    t = -np.pi + 2 * np.pi * np.arange(5) / 5
    assert np.allclose(eigenvalue_curves(FREE, 5)[0], 2 * np.cos(t), atol=1e-15)
    sym = periodic_symbol(PeriodicBackground((1, 1), (0, 0)))
    N = 64
    t = -np.pi + 2 * np.pi * np.arange(N) / N
    closed = np.abs(1 + np.exp(1j * t))
    curves = eigenvalue_curves(sym, N)
    assert np.allclose(curves[1], closed, atol=1e-13)
    assert np.allclose(curves[0], -closed, atol=1e-13)
    shifted = eigenvalue_curves(periodic_symbol(PeriodicBackground((1,), (5,))), 64)
    assert shifted.min() >= 3 and shifted.max() <= 7


def test_non_hermitian_rejected():
    sym = scalar_symbol({1: 1.0, -1: 2.0})
    assert not sym.is_hermitian
    with pytest.raises(NotHermitianSymbol):
        eigenvalue_curves(sym, 16)


def test_essential_ranges():
    assert essential_range(FREE).to_list() == [[-2.0, 2.0]]
    S = essential_range(periodic_symbol(PeriodicBackground((1, 1), (0, 0))))
    assert len(S) == 1 and np.allclose(S.to_list(), [[-2, 2]], atol=1e-12)


def test_two_periodic_gap():
    # curves are +-sqrt(1.01 + 0.2 cos t): extremes 0.9 and 1.1
    S = essential_range(periodic_symbol(PeriodicBackground((1, 0.1), (0, 0))), gap_tol=1e-3)
    assert len(S) == 2
    (lo1, hi1), (lo2, hi2) = S.to_list()
    assert np.allclose([lo1, hi1, lo2, hi2], [-1.1, -0.9, 0.9, 1.1], atol=1e-12)
    ref_t = np.linspace(-np.pi, np.pi, 200001)
    ref = np.sqrt(1.01 + 0.2 * np.cos(ref_t))
    assert abs(hi2 - ref.max()) < 1e-9 and abs(lo2 - ref.min()) < 1e-9


def test_interval_union_distance():
    S = IntervalUnion(((-2.0, -1.0), (1.0, 2.0)))
    assert S.distance(0.0) == 1.0
    assert S.distance(1.5 + 2j) == 2.0
    assert S.distance(3 + 4j) == math.hypot(1, 4)
    with pytest.raises(ValueError):
        IntervalUnion(((0.0, 2.0), (1.0, 3.0)))


def test_free_moments():
    assert symbol_functional(FREE, Monomial(2)) == pytest.approx(2, abs=1e-13)
    assert symbol_functional(FREE, Monomial(0)) == 1
    # central binomials C(2q, q); independent oracle: fine-grid trapezoid of (2cos t)^{2q}
    t = 2 * np.pi * np.arange(2**16) / 2**16
    for q, exact in ((2, 6), (3, 20)):
        fine = np.mean((2 * np.cos(t)) ** (2 * q))
        assert fine == pytest.approx(exact, abs=1e-12)
        assert math.comb(2 * q, q) == exact
        assert symbol_functional(FREE, Monomial(2 * q)) == pytest.approx(exact, abs=1e-12)


def test_arcsine_examples():
    assert arcsine_functional(Monomial(2)) == pytest.approx(2, abs=1e-13)
    assert abs(arcsine_functional(Monomial(1))) < 1e-14
    assert arcsine_functional(Monomial(4)) == pytest.approx(6, abs=1e-12)


def test_symbol_records_roundtrip():
    sym = periodic_symbol(PERIODIC_BACKGROUNDS["periodic3_gap"])
    back = MatrixSymbol.from_records(sym.k, sym.to_records())
    assert sorted(back.coeffs) == sorted(sym.coeffs)
    for j in sym.coeffs:
        assert np.array_equal(back.coeffs[j], sym.coeffs[j])


# -- properties ---------------------------------------------------------------

backgrounds = st.integers(1, 4).flatmap(
    lambda k: st.builds(
        PeriodicBackground,
        st.tuples(*[st.floats(0.05, 3.0) for _ in range(k)]),
        st.tuples(*[st.floats(-3.0, 3.0) for _ in range(k)]),
    )
)


@settings(max_examples=50, deadline=None)
@given(backgrounds)
def test_fourier_roundtrip(bg):
    sym = periodic_symbol(bg)
    N = 4 * max(1, sym.bandwidth) + 4
    for j in range(-2, 3):
        assert np.max(np.abs(fourier_coefficient(sym, j, N) - sym.coefficient(j))) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(-3.0, 3.0))
def test_scalar_range(a, b):
    S = essential_range(periodic_symbol(PeriodicBackground((a,), (b,))))
    assert len(S) == 1
    assert np.allclose(S.to_list()[0], [b - 2 * a, b + 2 * a], atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(backgrounds)
def test_range_components_at_most_k(bg):
    assert len(essential_range(periodic_symbol(bg), N=256)) <= bg.k


coeff_lists = st.lists(st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False), min_size=1, max_size=5)


@settings(max_examples=40, deadline=None)
@given(backgrounds, coeff_lists, coeff_lists, st.complex_numbers(max_magnitude=2.0, allow_nan=False))
def test_functional_linear(bg, c1, c2, alpha):
    sym = periodic_symbol(bg)
    F, G = Polynomial(tuple(c1)), Polynomial(tuple(c2))
    combo = Polynomial(tuple(alpha * x for x in c1))
    lhs = symbol_functional(sym, lambda z: combo(z) + G(z), 256)
    rhs = symbol_functional(sym, F, 256) * alpha + symbol_functional(sym, G, 256)
    scale = 1 + sum(abs(x) for x in c1 + c2) * 3.0**5 * (1 + abs(alpha))
    assert abs(lhs - rhs) <= 1e-12 * scale


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-2.0, 2.0), min_size=1, max_size=13))
def test_arcsine_matches_scalar_symbol(coeffs):
    F = Polynomial(tuple(coeffs))
    assert abs(arcsine_functional(F) - symbol_functional(FREE, F)) <= 1e-8
