"""Pointwise inequality checks on a single matrix.

Ky Fan-Mirsky majorization, the nonreal-outlier bound with real-part
confinement, and the characteristic-polynomial residual of a Jacobi
section.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from speclab.numkernel import (
    TridiagonalMatrix,
    eig_hermitian,
    eigvalsh_dense,
    entrywise_l1,
    hermitian_parts,
    spectrum,
    trace_norm,
)
from speclab.sequences import jacobi_section

KYFAN_TOL = 1e-9
RECURRENCE_TOL = 1e-6


def _hermitian_eigvals(H):
    if isinstance(H, TridiagonalMatrix):
        return eig_hermitian(H, tol=1e-12).eigenvalues.real
    return eigvalsh_dense(H).eigenvalues.real


def _order_desc(primary, secondary):
    # primary descending, ties by secondary descending, then by input index
    idx = np.arange(primary.size)
    return np.lexsort((idx, -secondary, -primary))


@dataclass
class KyFanReport:
    im_violation: float
    re_violation: float
    im_equality_gap: float
    re_equality_gap: float
    tolerance: float

    @property
    def holds(self):
        return max(self.im_violation, self.re_violation, self.im_equality_gap, self.re_equality_gap) <= self.tolerance

    def to_dict(self):
        return {**asdict(self), "holds": self.holds}


def _partial_sum_check(lhs, rhs):
    lhs_cum = np.cumsum(lhs)
    rhs_cum = np.cumsum(rhs)
    violation = max(0.0, float(np.max(lhs_cum - rhs_cum)))
    return violation, abs(math.fsum(lhs) - math.fsum(rhs))


def kyfan_mirsky_check(A, spec=None):
    """Partial sums of Im/Re eigenvalues of A against eigenvalues of Im(A)/Re(A).

    Both sides are sorted decreasingly; the violation is the largest positive
    excess of the left partial sums, the equality gap the mismatch at q = n.
    """
    lam = (spec if spec is not None else spectrum(A)).eigenvalues
    re_part, im_part = hermitian_parts(A)
    tol = KYFAN_TOL * (1.0 + entrywise_l1(A))

    lhs_im = lam.imag[_order_desc(lam.imag, lam.real)]
    rhs_im = np.sort(_hermitian_eigvals(im_part))[::-1]
    lhs_re = lam.real[_order_desc(lam.real, lam.imag)]
    rhs_re = np.sort(_hermitian_eigvals(re_part))[::-1]

    im_v, im_gap = _partial_sum_check(lhs_im, rhs_im)
    re_v, re_gap = _partial_sum_check(lhs_re, rhs_re)
    return KyFanReport(im_v, re_v, im_gap, re_gap, tol)


@dataclass
class OutlierReport:
    eps: float
    count: int
    bound: float
    holds: bool
    re_interval: tuple
    re_confined: bool
    count_outside: int
    holds_outside: bool

    @property
    def all_hold(self):
        return self.holds and self.re_confined and self.holds_outside

    def to_dict(self):
        return {**asdict(self), "re_interval": list(self.re_interval), "all_hold": self.all_hold}


def imaginary_trace_norm(A, method="svd"):
    """||Im(A)||_1 by singular values ("svd") or by |eigenvalues| ("eig")."""
    im_part = hermitian_parts(A)[1]
    if method == "svd":
        return trace_norm(im_part)
    if method == "eig":
        return math.fsum(np.abs(_hermitian_eigvals(im_part)))
    raise ValueError(f"unknown method {method!r}")


def nonreal_outlier_bound(A, eps, spec=None, method="svd", confinement_tol=1e-9):
    """Check #{|Im lambda| > eps} <= ||Im(A)||_1 / eps and the [c, d] variant.

    [c, d] is the hull of the eigenvalues of Re(A); real parts of the
    eigenvalues of A must lie in it, and the count of eigenvalues outside its
    eps-neighborhood obeys the same bound.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    lam = (spec if spec is not None else spectrum(A)).eigenvalues
    bound = imaginary_trace_norm(A, method) / eps
    count = int(np.count_nonzero(np.abs(lam.imag) > eps))

    re_eigs = _hermitian_eigvals(hermitian_parts(A)[0])
    c, d = float(re_eigs.min()), float(re_eigs.max())
    slack = confinement_tol * (1.0 + entrywise_l1(A))
    confined = bool(np.all((lam.real >= c - slack) & (lam.real <= d + slack)))
    dx = np.maximum(0.0, np.maximum(c - lam.real, lam.real - d))
    outside = int(np.count_nonzero(np.hypot(dx, lam.imag) >= eps))
    return OutlierReport(
        float(eps), count, bound, count <= bound + 1e-9, (c, d), confined, outside, outside <= bound + 1e-9
    )


# -- characteristic polynomial residual ------------------------------------------


@dataclass
class RecurrenceReport:
    residual: float
    bound: float
    degenerate: list

    @property
    def holds(self):
        return self.residual <= self.bound

    def to_dict(self):
        return {**asdict(self), "holds": self.holds}


_RESCALE = 1e150


def characteristic_newton_step(A, z):
    """d_n(z) / d_n'(z) for the monic characteristic polynomial of ``A``.

    d_j = (z - b_{j-1}) d_{j-1} - a_{j-1} c_{j-1} d_{j-2}, d_{-1} = 0, d_0 = 1,
    together with its derivative; all four running values are rescaled
    jointly to avoid overflow, which leaves the ratio unchanged.
    Returns ``nan`` where the derivative vanishes.
    """
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    prod = A.sub * A.sup
    d_prev, d = np.zeros_like(z), np.ones_like(z)
    dp_prev, dp = np.zeros_like(z), np.zeros_like(z)
    for j in range(A.n):
        w = z - A.diag[j]
        coupling = prod[j - 1] if j >= 1 else 0.0
        d_new = w * d - coupling * d_prev
        dp_new = d + w * dp - coupling * dp_prev
        d_prev, d, dp_prev, dp = d, d_new, dp, dp_new
        scale = np.maximum(np.abs(d), np.abs(dp))
        big = scale > _RESCALE
        if np.any(big):
            f = np.where(big, 1.0 / np.where(big, scale, 1.0), 1.0)
            d, d_prev, dp, dp_prev = d * f, d_prev * f, dp * f, dp_prev * f
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.where(dp != 0, d / np.where(dp != 0, dp, 1.0), np.nan)
    return step


def recurrence_residual(seq_or_matrix, n=None, spec=None):
    """Largest |d_n(lambda) / d_n'(lambda)| over the computed eigenvalues.

    Accepts a CoefficientSequence with order ``n`` or a TridiagonalMatrix.
    Eigenvalues where the derivative underflows (numerically multiple roots)
    are reported in ``degenerate`` and excluded from the maximum.
    """
    if isinstance(seq_or_matrix, TridiagonalMatrix):
        A = seq_or_matrix
    else:
        if n is None or n < 1:
            raise ValueError("n >= 1 required for a sequence")
        A = jacobi_section(seq_or_matrix, n)
    lam = (spec if spec is not None else spectrum(A)).eigenvalues
    step = characteristic_newton_step(A, lam)
    bad = ~np.isfinite(step)
    residual = float(np.max(np.abs(step[~bad]), initial=0.0))
    bound = RECURRENCE_TOL * (1.0 + float(np.max(np.abs(lam))))
    return RecurrenceReport(residual, bound, [int(i) for i in np.flatnonzero(bad)])

