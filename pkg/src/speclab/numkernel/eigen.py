"""Eigenvalue solvers: complex Hessenberg QR and symmetric tridiagonal QL."""

from dataclasses import dataclass

import numpy as np

from speclab.errors import NonConvergence, NotHermitian, NotHessenberg
from speclab.numkernel import _kernels
from speclab.numkernel.matrices import TridiagonalMatrix, as_dense

ITERATIONS_PER_EIGENVALUE = 40
HESSENBERG_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues (with multiplicity) plus solver diagnostics.

    ``max_residual`` is the largest subdiagonal entry dropped at a deflation,
    an absolute backward-error estimate.
    """

    eigenvalues: np.ndarray
    max_residual: float = 0.0
    iterations: int = 0

    def __len__(self):
        return self.eigenvalues.size

    @property
    def n(self):
        return self.eigenvalues.size

    def conj(self):
        return Spectrum(self.eigenvalues.conj(), self.max_residual, self.iterations)

    def trace_gap(self, trace):
        return abs(complex(self.eigenvalues.sum()) - complex(trace))


def _entrywise_l1(H):
    return float(np.abs(H).sum())


def hessenberg(A):
    """Householder reduction of a square matrix to upper Hessenberg form.

    Returns a new array similar to ``A``. Hermitian input yields a Hermitian
    tridiagonal result (up to rounding).
    """
    H = as_dense(A)
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1 :, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0 or np.abs(x[1:]).max() == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        # H <- (I - 2vv*) H (I - 2vv*)
        H[k + 1 :, k:] -= 2.0 * np.outer(v, v.conj() @ H[k + 1 :, k:])
        H[:, k + 1 :] -= 2.0 * np.outer(H[:, k + 1 :] @ v, v.conj())
        H[k + 2 :, k] = 0.0
    return H


def eig_general(A, budget=ITERATIONS_PER_EIGENVALUE):
    """All eigenvalues of a tridiagonal or upper Hessenberg matrix.

    Parameters
    ----------
    A : TridiagonalMatrix or array_like
        Dense input must already be upper Hessenberg; use
        :func:`eigvals_dense` for arbitrary square matrices.
    budget : int
        QR iterations allowed per eigenvalue before giving up.

    Returns
    -------
    Spectrum
        Eigenvalues in deflation order (bottom of the matrix first filled).

    Raises
    ------
    NotHessenberg
        Dense input has entries below the first subdiagonal.
    NonConvergence
        An eigenvalue failed to deflate; ``index`` is the stuck position.
    """
    H = as_dense(A)
    if not isinstance(A, TridiagonalMatrix):
        below = np.tril(H, -2)
        scale = HESSENBERG_TOL * _entrywise_l1(H)
        if np.abs(below).max(initial=0.0) > scale:
            raise NotHessenberg("entries below the first subdiagonal are not negligible")
        H = np.triu(H, -1)
    H = np.ascontiguousarray(H)
    w, its, neglected, stuck = _kernels.hessenberg_qr(H, int(budget))
    if stuck >= 0:
        raise NonConvergence(f"eigenvalue {stuck} did not deflate within {budget} iterations", stuck)
    return Spectrum(w, float(neglected), int(its))


def _hermitian_tridiagonal_parts(A, tol):
    if not isinstance(A, TridiagonalMatrix):
        raise TypeError("eig_hermitian expects a TridiagonalMatrix; use eigvalsh_dense")
    if not A.is_hermitian(tol):
        raise NotHermitian("matrix is not Hermitian (sub != conj(sup) or complex diagonal)")
    # a diagonal unitary similarity turns the off-diagonals into their moduli
    return A.diag.real.copy(), np.abs(A.sub)


def eig_hermitian(A, budget=ITERATIONS_PER_EIGENVALUE, tol=1e-14):
    """Real eigenvalues of a Hermitian tridiagonal matrix, ascending."""
    d, off = _hermitian_tridiagonal_parts(A, tol)
    return _symmetric_tridiagonal_eigvals(d, off, budget)


def _symmetric_tridiagonal_eigvals(d, off, budget=ITERATIONS_PER_EIGENVALUE):
    n = d.size
    d = np.ascontiguousarray(d, dtype=np.float64).copy()
    e = np.zeros(n)
    e[: n - 1] = off
    its, neglected, stuck = _kernels.symmetric_tridiagonal_ql(d, e, int(budget))
    if stuck >= 0:
        raise NonConvergence(f"eigenvalue {stuck} did not deflate within {budget} iterations", stuck)
    return Spectrum(np.sort(d).astype(np.complex128), float(neglected), int(its))


def eigvals_dense(A, budget=ITERATIONS_PER_EIGENVALUE):
    """Eigenvalues of an arbitrary square matrix via Hessenberg reduction."""
    return eig_general(hessenberg(A), budget)


def eigvalsh_dense(A, budget=ITERATIONS_PER_EIGENVALUE, tol=1e-12):
    """Eigenvalues of a dense Hermitian matrix, ascending."""
    A = as_dense(A)
    scale = max(1.0, _entrywise_l1(A))
    if np.abs(A - A.conj().T).max() > tol * scale:
        raise NotHermitian("matrix is not Hermitian")
    A = 0.5 * (A + A.conj().T)
    if A.shape[0] == 1:
        return Spectrum(np.array([A[0, 0].real], dtype=np.complex128))
    T = hessenberg(A)
    return _symmetric_tridiagonal_eigvals(np.diag(T).real, np.abs(np.diag(T, -1)), budget)


def spectrum(A):
    """Eigenvalues of any supported matrix, picking the cheapest exact route.

    Hermitian tridiagonal input goes to the QL solver, other tridiagonal
    input to Hessenberg QR; dense input is reduced first.
    """
    if isinstance(A, TridiagonalMatrix):
        return eig_hermitian(A) if A.is_hermitian() else eig_general(A)
    A = as_dense(A)
    if np.array_equal(A, A.conj().T):
        return eigvalsh_dense(A)
    return eigvals_dense(A)
