import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from speclab.errors import NotHermitian, NotHessenberg
from speclab.numkernel import (
    TridiagonalMatrix,
    eig_general,
    eig_hermitian,
    eigvals_dense,
    entrywise_l1,
    hermitian_parts,
    hessenberg,
    operator_norm,
    singular_values,
    spectrum,
    trace_norm,
)
from speclab.sampling import random_dense, random_tridiagonal
from speclab.sequences import free_jacobi, periodic_jacobi, PeriodicBackground

PHI = (1 + math.sqrt(5)) / 2


def _match(a, b):
    """Greedy multiset distance between two eigenvalue lists."""
    b = list(np.asarray(b, dtype=complex))
    worst = 0.0
    for z in np.asarray(a, dtype=complex):
        i = int(np.argmin([abs(z - w) for w in b]))
        worst = max(worst, abs(z - b.pop(i)))
    return worst


def _charpoly(A):
    """Monic det(zI - A) coefficients (highest first) by the three-term recurrence."""
    prev, cur = np.array([0j]), np.array([1 + 0j])
    for j in range(A.n):
        nxt = np.polysub(np.polymul([1, -A.diag[j]], cur), (A.sub[j - 1] * A.sup[j - 1] if j else 0) * prev)
        prev, cur = cur, nxt
    return cur


def _cardano(coeffs):
    a, b, c, d = coeffs
    b, c, d = b / a, c / a, d / a
    p = c - b * b / 3
    q = 2 * b**3 / 27 - b * c / 3 + d
    disc = cmath.sqrt(q * q / 4 + p**3 / 27)
    u = (-q / 2 + disc) ** (1 / 3)
    if abs(u) < 1e-300:
        u = (-q / 2 - disc) ** (1 / 3)
    w = cmath.exp(2j * math.pi / 3)
    roots = []
    for k in range(3):
        uk = u * w**k
        vk = -p / (3 * uk) if abs(uk) > 1e-300 else 0.0
        roots.append(uk + vk - b / 3)
    return roots


# -- eig_general --------------------------------------------------------------


@pytest.mark.parametrize("n", [8, 64, 512])
def test_free_jacobi_golden_grid(n):
    spec = eig_general(free_jacobi(n))
    exact = 2 * np.cos(np.arange(1, n + 1) * np.pi / (n + 1))
    assert np.max(np.abs(np.sort(spec.eigenvalues.real) - np.sort(exact))) <= 1e-10
    assert np.max(np.abs(spec.eigenvalues.imag)) <= 1e-10


def test_one_by_one_exact():
    spec = eig_general(TridiagonalMatrix([], [2.5 - 1j], []))
    assert spec.eigenvalues[0] == 2.5 - 1j


def test_two_by_two_closed_form():
    spec = eig_general(TridiagonalMatrix([0.5], [0, 0], [2.0]))
    assert _match(spec.eigenvalues, [1, -1]) <= 1e-14


def test_complex_three_by_three_against_cardano():
    A = TridiagonalMatrix([1, 1], [1j, 0, -1j], [1, 1])
    poly = _charpoly(A)
    # the recurrence collapses to z^3 - z
    assert np.allclose(poly, [1, 0, -1, 0], atol=1e-15)
    roots = _cardano(poly)
    assert _match(eig_general(A).eigenvalues, roots) <= 1e-10
    assert _match(roots, [-1, 0, 1]) <= 1e-12


def test_dense_hessenberg_precondition():
    A = np.triu(random_dense(np.random.default_rng(5), 6), -1)
    assert _match(eig_general(A).eigenvalues, np.linalg.eigvals(A)) <= 1e-10
    A[4, 0] = 1.0
    with pytest.raises(NotHessenberg):
        eig_general(A)


def test_dense_general_via_householder():
    A = random_dense(np.random.default_rng(3), 12)
    H = hessenberg(A)
    assert np.abs(np.tril(H, -2)).max() <= 1e-13 * np.abs(A).sum()
    assert _match(eigvals_dense(A).eigenvalues, np.linalg.eigvals(A)) <= 1e-10


# -- eig_hermitian ------------------------------------------------------------


def test_hermitian_free_16():
    spec = eig_hermitian(free_jacobi(16))
    exact = np.sort(2 * np.cos(np.arange(1, 17) * np.pi / 17))
    assert np.max(np.abs(spec.eigenvalues.real - exact)) <= 1e-12
    assert np.all(np.diff(spec.eigenvalues.real) >= 0)


def test_hermitian_diagonal():
    spec = eig_hermitian(TridiagonalMatrix([0, 0], [3, 1, 2], [0, 0]))
    assert list(spec.eigenvalues.real) == [1.0, 2.0, 3.0]


def test_hermitian_two_periodic_quartic_oracle():
    A = periodic_jacobi(PeriodicBackground((1, 2), (0, 0)), 4)
    # det(zI - A) = z^4 - 9 z^2 + 16 for off-diagonals (2, 1, 2)
    assert np.allclose(_charpoly(A), [1, 0, -9, 0, 16])
    r = math.sqrt((9 + math.sqrt(17)) / 2), math.sqrt((9 - math.sqrt(17)) / 2)
    oracle = sorted([-r[0], -r[1], r[1], r[0]])
    herm = eig_hermitian(A).eigenvalues.real
    assert np.max(np.abs(herm - oracle)) <= 1e-10
    assert _match(eig_general(A).eigenvalues, oracle) <= 1e-10


def test_hermitian_rejects_nonhermitian():
    with pytest.raises(NotHermitian):
        eig_hermitian(TridiagonalMatrix([1.0], [0, 0], [2.0]))


# -- singular values and norms ------------------------------------------------


def test_all_ones_extremal():
    J = np.ones((5, 5))
    s = singular_values(J)
    assert np.allclose(s, [5, 0, 0, 0, 0], atol=1e-12)
    assert trace_norm(J) == pytest.approx(5, abs=1e-12)
    assert entrywise_l1(J) == 25
    assert operator_norm(J) == pytest.approx(5, abs=1e-12)


def test_identity():
    assert np.allclose(singular_values(np.eye(4)), 1.0)
    assert entrywise_l1(np.eye(5)) == 5
    assert operator_norm(np.eye(3)) == pytest.approx(1.0)


def test_golden_ratio_svd():
    # A*A = [[1,1],[1,2]] has eigenvalues (3 +- sqrt5)/2
    A = np.array([[1.0, 1.0], [0.0, 1.0]])
    oracle = [math.sqrt((3 + math.sqrt(5)) / 2), math.sqrt((3 - math.sqrt(5)) / 2)]
    assert np.allclose(singular_values(A), oracle, rtol=0, atol=1e-14)
    assert oracle[0] == pytest.approx(PHI, abs=1e-15)
    assert trace_norm(A) == pytest.approx(math.sqrt(5), abs=1e-14)


def test_zero_and_small_examples():
    assert trace_norm(np.zeros((3, 3))) == 0.0
    assert entrywise_l1(np.array([[0, -2j], [3, 0]])) == 5.0
    assert operator_norm(free_jacobi(8)) == pytest.approx(2 * math.cos(math.pi / 9), abs=1e-12)


def test_hermitian_parts_definitions():
    A = TridiagonalMatrix([1, 0], [1j, 0, 0], [0, 0])
    re, im = hermitian_parts(A)
    D = A.to_dense()
    assert np.allclose(re.to_dense(), (D + D.conj().T) / 2, atol=0)
    assert np.allclose(im.to_dense(), (D - D.conj().T) / 2j, atol=0)
    assert im.diag[0] == 1.0
    assert re.sub[0] == re.sup[0] == 0.5
    assert im.sub[0] == -0.5j and im.sup[0] == 0.5j


def test_hermitian_parts_special_cases():
    B = np.array([[2, 1 - 1j], [1 + 1j, -1]])
    re, im = hermitian_parts(B)
    assert np.array_equal(re, B) and not np.any(im)
    re, im = hermitian_parts(1j * B)
    assert not np.any(re) and np.allclose(im, B)


# -- properties ---------------------------------------------------------------

seeds = st.integers(0, 2**32 - 1)
orders = st.integers(2, 64)


@settings(max_examples=60, deadline=None)
@given(seeds, orders)
def test_trace_invariant(seed, n):
    A = random_tridiagonal(np.random.default_rng(seed), n)
    spec = spectrum(A)
    assert spec.n == n
    assert spec.trace_gap(A.trace()) <= 1e-10 * (1 + entrywise_l1(A))


@settings(max_examples=40, deadline=None)
@given(seeds, orders)
def test_conjugate_transpose_spectrum(seed, n):
    A = random_tridiagonal(np.random.default_rng(seed), n)
    lam = spectrum(A).eigenvalues
    lam_star = spectrum(A.conj_transpose()).eigenvalues
    assert _match(lam_star, lam.conj()) <= 1e-9 * (1 + entrywise_l1(A))


@settings(max_examples=40, deadline=None)
@given(seeds, orders)
def test_general_and_hermitian_solvers_agree(seed, n):
    rng = np.random.default_rng(seed)
    off = rng.standard_normal(n - 1)
    A = TridiagonalMatrix(off, rng.standard_normal(n), off)
    g = np.sort(eig_general(A).eigenvalues.real)
    h = eig_hermitian(A).eigenvalues.real
    assert np.max(np.abs(g - h)) <= 1e-9


@settings(max_examples=250, deadline=None)
@given(seeds, st.integers(2, 64), st.booleans())
def test_norm_ordering(seed, n, dense):
    rng = np.random.default_rng(seed)
    A = random_dense(rng, min(n, 24)) if dense else random_tridiagonal(rng, n)
    m = A.shape[0] if dense else A.n
    tn, op = trace_norm(A), operator_norm(A)
    tr = abs(np.trace(A)) if dense else abs(A.trace())
    tol = 1e-10 * (1 + entrywise_l1(A))
    assert tn <= entrywise_l1(A) + tol
    assert tr <= tn + tol
    assert op <= tn + tol <= m * op + 2 * tol
    s = singular_values(A)
    D = A if dense else A.to_dense()
    assert np.all(np.diff(s) <= 0) and s[-1] >= 0
    assert math.fsum(s**2) == pytest.approx(np.sum(np.abs(D) ** 2), rel=1e-10)


@settings(max_examples=60, deadline=None)
@given(seeds, orders)
def test_hermitian_parts_reconstruct(seed, n):
    A = random_tridiagonal(np.random.default_rng(seed), n)
    re, im = hermitian_parts(A)
    assert re.is_hermitian(1e-15) and im.is_hermitian(1e-15)
    assert np.max(np.abs(re.to_dense() + 1j * im.to_dense() - A.to_dense())) <= 1e-15 * (1 + np.abs(A.to_dense()).max())


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 24))
def test_trace_norm_equals_abs_eigs_for_hermitian(seed, n):
    D = random_dense(np.random.default_rng(seed), n)
    H = (D + D.conj().T) / 2
    assert trace_norm(H) == pytest.approx(np.abs(np.linalg.eigvalsh(H)).sum(), abs=1e-9)


def test_trace_norm_below_entrywise_seeded_sweep():
    rng = np.random.default_rng(1000)
    for i in range(1000):
        n = int(rng.integers(2, 65))
        A = random_tridiagonal(rng, n) if i % 2 else random_dense(rng, min(n, 32))
        assert trace_norm(A) <= entrywise_l1(A) * (1 + 1e-12)
