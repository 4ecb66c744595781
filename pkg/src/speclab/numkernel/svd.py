"""Singular values and the norms built on them."""

import math

import numpy as np

from speclab.errors import NonConvergence
from speclab.numkernel import _kernels
from speclab.numkernel.matrices import TridiagonalMatrix, as_dense

SINE_TOL = 1e-14
MAX_SWEEPS = 30


def singular_values(A, max_sweeps=MAX_SWEEPS):
    """Singular values of a square matrix, nonincreasing.

    One-sided cyclic Jacobi; converged once no rotation in a sweep has a
    sine above ``SINE_TOL``.
    """
    M = np.asfortranarray(as_dense(A))
    sigma, sweeps, converged = _kernels.one_sided_jacobi(M, SINE_TOL, int(max_sweeps))
    if not converged:
        raise NonConvergence(f"one-sided Jacobi not converged after {sweeps} sweeps", sweeps)
    return np.sort(sigma)[::-1]


def trace_norm(A):
    """Sum of singular values (Schatten 1-norm)."""
    return math.fsum(singular_values(A))


def operator_norm(A):
    """Largest singular value."""
    return float(singular_values(A)[0])


def entrywise_l1(A):
    """Sum of the moduli of all entries."""
    if isinstance(A, TridiagonalMatrix):
        parts = [np.abs(A.sub), np.abs(A.diag), np.abs(A.sup)]
        return math.fsum(np.concatenate(parts))
    return math.fsum(np.abs(as_dense(A)).ravel())


def hermitian_parts(A):
    """Return ``(Re(A), Im(A))`` with Re(A) = (A + A*)/2, Im(A) = (A - A*)/(2i).

    Tridiagonal input yields tridiagonal parts; anything else yields arrays.
    """
    if isinstance(A, TridiagonalMatrix):
        re = TridiagonalMatrix(
            (A.sub + A.sup.conj()) / 2, A.diag.real, (A.sup + A.sub.conj()) / 2
        )
        im = TridiagonalMatrix(
            (A.sub - A.sup.conj()) / 2j, A.diag.imag, (A.sup - A.sub.conj()) / 2j
        )
        return re, im
    M = as_dense(A)
    Mh = M.conj().T
    return (M + Mh) / 2, (M - Mh) / 2j
