"""Trace norm versus entrywise l1 norm for banded matrices.

The m-th diagonal part D_m(A) of a matrix is recovered either by masking or
by averaging D(t) A D(t)^* exp(-imt) over a uniform grid of angles, with
D(t) = diag(exp(i(j-1)t)). For a matrix whose nonzero diagonals number C,
||A||_1 <= ||A||_[1] <= C ||A||_1.
"""

from dataclasses import asdict, dataclass

import numpy as np

from speclab.errors import GridTooCoarse
from speclab.numkernel import TridiagonalMatrix, as_dense, entrywise_l1, trace_norm

NORM_TOL = 1e-9


def diagonal_part(A, m):
    """Keep entry (j, k) iff j - k == m; zero elsewhere."""
    A = as_dense(A)
    n = A.shape[0]
    if not -n < m < n:
        raise ValueError(f"diagonal index {m} outside ({-n}, {n})")
    rows, cols = np.indices(A.shape)
    return np.where(rows - cols == m, A, 0.0)


def bhatia_average(A, m, N):
    """(1/N) sum_l D(t_l) A D(t_l)^* exp(-i m t_l) on t_l = 2 pi l / N.

    Equals diagonal_part(A, m) up to rounding once N >= 2n - 1.
    """
    A = as_dense(A)
    n = A.shape[0]
    if N < 2 * n - 1:
        raise GridTooCoarse(f"N = {N} < 2n - 1 = {2 * n - 1}")
    t = 2.0 * np.pi * np.arange(N) / N
    out = np.zeros_like(A)
    phases = np.exp(1j * np.outer(t, np.arange(n)))  # row l: diagonal of D(t_l)
    for l in range(N):
        d = phases[l]
        out += (d[:, None] * A * d.conj()[None, :]) * np.exp(-1j * m * t[l])
    return out / N


def nonzero_diagonals(A):
    """Offsets m with at least one nonzero entry on the m-th diagonal."""
    if isinstance(A, TridiagonalMatrix):
        offsets = []
        if np.any(A.sup):
            offsets.append(-1)
        if np.any(A.diag):
            offsets.append(0)
        if np.any(A.sub):
            offsets.append(1)
        return offsets
    A = as_dense(A)
    n = A.shape[0]
    return [m for m in range(1 - n, n) if np.any(np.diagonal(A, -m))]


@dataclass
class NormEquivalenceReport:
    trace_norm: float
    entrywise: float
    c_struct: int
    lower_ok: bool
    upper_ok: bool
    loose_lower_ok: bool
    loose_upper_ok: bool

    @property
    def holds(self):
        return self.lower_ok and self.upper_ok

    def to_dict(self):
        return {**asdict(self), "holds": self.holds}


def norm_equivalence_check(A, c_struct=None):
    """Sandwich ||A||_1 <= ||A||_[1] <= C ||A||_1 for a banded matrix.

    ``c_struct`` is the number of structurally nonzero diagonals; it is 3 for
    a TridiagonalMatrix and otherwise defaults to the diagonals actually
    occupied. The loose tridiagonal sandwich ||A||_1 / 3 <= ||A||_[1] <=
    9 ||A||_1 is reported alongside.
    """
    if c_struct is None:
        c_struct = 3 if isinstance(A, TridiagonalMatrix) else max(1, len(nonzero_diagonals(A)))
    tn = trace_norm(A)
    e = entrywise_l1(A)
    tol = NORM_TOL * (1.0 + e)
    return NormEquivalenceReport(
        tn,
        e,
        int(c_struct),
        e >= tn - tol,
        e <= c_struct * tn + tol,
        e >= tn / 3.0 - tol,
        e <= 9.0 * tn + tol,
    )
