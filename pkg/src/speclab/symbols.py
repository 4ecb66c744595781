"""Matrix-valued trigonometric symbols on [-pi, pi].

A symbol is stored by its finitely many Fourier coefficients, with
theta(t) = sum_j coeffs[j] * exp(i j t).
"""

import math
from dataclasses import dataclass

import numpy as np

from speclab.errors import NotHermitianSymbol
from speclab.numkernel import eigvalsh_dense

DEFAULT_QUADRATURE_N = 1024
DEFAULT_RANGE_N = 4096


@dataclass(frozen=True, eq=False)
class MatrixSymbol:
    k: int
    coeffs: dict

    def __post_init__(self):
        k = int(self.k)
        if k < 1:
            raise ValueError("block size must be positive")
        clean = {}
        for j, c in self.coeffs.items():
            c = np.array(c, dtype=np.complex128).reshape(k, k)
            if not np.all(np.isfinite(c)):
                raise ValueError(f"coefficient {j} has non-finite entries")
            if np.any(c != 0):
                c.setflags(write=False)
                clean[int(j)] = c
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @property
    def bandwidth(self):
        return max((abs(j) for j in self.coeffs), default=0)

    def coefficient(self, j):
        return self.coeffs.get(j, np.zeros((self.k, self.k), dtype=np.complex128))

    @property
    def is_hermitian(self):
        """True iff coeffs[-j] == coeffs[j]^* exactly for every j."""
        keys = set(self.coeffs) | {-j for j in self.coeffs}
        return all(np.array_equal(self.coefficient(-j), self.coefficient(j).conj().T) for j in keys)

    def to_records(self):
        """List of ``(j, matrix)`` records; complex entries as [re, im] pairs."""
        return [
            {"j": j, "matrix": [[[z.real, z.imag] for z in row] for row in c.tolist()]}
            for j, c in self.coeffs.items()
        ]

    @classmethod
    def from_records(cls, k, records):
        coeffs = {}
        for rec in records:
            m = np.array(rec["matrix"], dtype=np.float64)
            coeffs[int(rec["j"])] = m[..., 0] + 1j * m[..., 1]
        return cls(k, coeffs)


@dataclass(frozen=True)
class IntervalUnion:
    """Ordered union of disjoint closed real intervals."""

    intervals: tuple

    def __post_init__(self):
        ivs = tuple((float(lo), float(hi)) for lo, hi in self.intervals)
        for lo, hi in ivs:
            if not lo <= hi:
                raise ValueError(f"empty interval [{lo}, {hi}]")
        for (_, hi), (lo, _) in zip(ivs, ivs[1:]):
            if not hi < lo:
                raise ValueError("intervals must be disjoint and ordered")
        object.__setattr__(self, "intervals", ivs)

    def __len__(self):
        return len(self.intervals)

    def distance(self, z):
        """Euclidean distance from complex point(s) ``z`` to the union."""
        z = np.asarray(z, dtype=np.complex128)
        x, y = z.real, np.abs(z.imag)
        best = np.full(z.shape, np.inf)
        for lo, hi in self.intervals:
            dx = np.maximum(0.0, np.maximum(lo - x, x - hi))
            best = np.minimum(best, np.hypot(dx, y))
        return best

    def to_list(self):
        return [list(iv) for iv in self.intervals]


def _grid(N):
    return -np.pi + 2.0 * np.pi * np.arange(N) / N


def periodic_symbol(bg):
    """theta(a, b, t): J_k[a, b] plus a_0 exp(+-it) in the two corners."""
    k = bg.k
    h0 = np.diag(np.asarray(bg.b, dtype=np.complex128))
    for j in range(1, k):
        h0[j, j - 1] = h0[j - 1, j] = bg.a[j]
    h1 = np.zeros((k, k), dtype=np.complex128)
    hm1 = np.zeros((k, k), dtype=np.complex128)
    h1[0, k - 1] = bg.a[0]
    hm1[k - 1, 0] = bg.a[0]
    return MatrixSymbol(k, {-1: hm1, 0: h0, 1: h1})


def scalar_symbol(coeffs):
    """k = 1 symbol from a ``{j: complex}`` map; 2cos t is ``{-1: 1, 1: 1}``."""
    return MatrixSymbol(1, {j: [[c]] for j, c in coeffs.items()})


def evaluate(sym, t):
    """theta(t) as a k x k array, or an (N, k, k) stack for array ``t``."""
    t_arr = np.asarray(t, dtype=np.float64)
    out = np.zeros(t_arr.shape + (sym.k, sym.k), dtype=np.complex128)
    for j, c in sym.coeffs.items():
        out += np.exp(1j * j * t_arr)[..., None, None] * c
    if sym.is_hermitian:
        out = 0.5 * (out + np.conj(np.swapaxes(out, -1, -2)))
    return out


def fourier_coefficient(sym, j, N):
    """Trapezoid approximation of (1/2pi) int theta(t) exp(-ijt) dt."""
    t = _grid(N)
    vals = evaluate(sym, t)
    return np.tensordot(np.exp(-1j * j * t), vals, axes=(0, 0)) / N


def _require_hermitian(sym):
    if not sym.is_hermitian:
        raise NotHermitianSymbol("symbol is not Hermitian-valued")


def eigenvalue_curves(sym, N):
    """Eigenvalues of theta(t_l) on t_l = -pi + 2 pi l / N, shape (k, N).

    Column l is sorted ascending.
    """
    _require_hermitian(sym)
    if N < 2:
        raise ValueError("N must be >= 2")
    vals = evaluate(sym, _grid(N))
    if sym.k == 1:
        return vals[:, 0, 0].real[None, :].copy()
    curves = np.empty((sym.k, N))
    for l in range(N):
        curves[:, l] = eigvalsh_dense(vals[l]).eigenvalues.real
    return curves


def _merge(intervals, gap_tol):
    merged = []
    for lo, hi in sorted(intervals):
        if merged and lo - merged[-1][1] < gap_tol:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return IntervalUnion(tuple(tuple(iv) for iv in merged))


def essential_range(sym, N=DEFAULT_RANGE_N, gap_tol=None):
    """Grid approximation of the union of the eigenvalue-curve ranges.

    Intervals closer than ``gap_tol`` are merged; the default is 1e-6 times
    the total width of the range.
    """
    if N < 64:
        raise ValueError("N must be >= 64")
    curves = eigenvalue_curves(sym, N)
    ranges = [(float(c.min()), float(c.max())) for c in curves]
    if gap_tol is None:
        width = max(hi for _, hi in ranges) - min(lo for lo, _ in ranges)
        gap_tol = 1e-6 * width
    return _merge(ranges, gap_tol)


def symbol_functional(sym, F, N=DEFAULT_QUADRATURE_N):
    """(1/(2 pi k)) sum_j int F(lambda_j(theta(t))) dt by the periodic trapezoid rule."""
    curves = eigenvalue_curves(sym, N)
    vals = np.asarray(F(curves.astype(np.complex128)), dtype=np.complex128)
    return complex(math.fsum(vals.real.ravel()) / vals.size) + 1j * (
        math.fsum(vals.imag.ravel()) / vals.size
    )


def arcsine_functional(F, N=DEFAULT_QUADRATURE_N):
    """(1/pi) int_{-2}^{2} F(x) / sqrt(4 - x^2) dx.

    Computed in the angle variable x = 2 cos t with the N-point midpoint
    (Gauss-Chebyshev) rule, which is exact for polynomials of degree < 2N.
    """
    t = (2.0 * np.arange(1, N + 1) - 1.0) * np.pi / (2.0 * N)
    vals = np.asarray(F((2.0 * np.cos(t)).astype(np.complex128)), dtype=np.complex128)
    re, im = math.fsum(vals.real) / N, math.fsum(vals.imag) / N
    return re if im == 0.0 else complex(re, im)
