"""Seeded random matrices for property suites."""

import numpy as np

from speclab.numkernel import TridiagonalMatrix

DEFAULT_SEED = 20240101


def _cnormal(rng, size):
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def random_tridiagonal(rng, n, scale=1.0):
    """Complex tridiagonal matrix with i.i.d. standard complex normal entries."""
    return TridiagonalMatrix(scale * _cnormal(rng, n - 1), scale * _cnormal(rng, n), scale * _cnormal(rng, n - 1))


def random_banded(rng, n, diagonals):
    """Dense complex matrix supported on ``diagonals`` centered diagonals (odd count)."""
    half = diagonals // 2
    A = _cnormal(rng, (n, n))
    rows, cols = np.indices((n, n))
    return np.where(np.abs(rows - cols) <= half, A, 0.0)


def random_dense(rng, n):
    return _cnormal(rng, (n, n))


def tridiagonal_suite(seed, count, min_order, max_order):
    """``count`` random tridiagonals with orders drawn uniformly from [min_order, max_order]."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(min_order, max_order + 1))
        out.append(random_tridiagonal(rng, n))
    return out
