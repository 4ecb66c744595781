"""Matrix containers.

Dense matrices are plain 2-D ``complex128`` numpy arrays; :func:`as_dense`
is the single entry point that validates and converts. Tridiagonal matrices
get their own container because every Jacobi section is stored as three
diagonals.
"""

from dataclasses import dataclass, field

import numpy as np


def _as_complex_vector(values, name):
    arr = np.array(values, dtype=np.complex128, copy=True).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TridiagonalMatrix:
    """Complex tridiagonal matrix of order ``n``.

    ``sub[j-1]`` sits at (j+1, j), ``diag[j]`` at (j+1, j+1) and ``sup[j-1]``
    at (j, j+1), using 1-based matrix positions. In Jacobi notation ``sub``
    holds a_1..a_{n-1}, ``diag`` holds b_0..b_{n-1} and ``sup`` holds
    c_1..c_{n-1}.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        diag = _as_complex_vector(self.diag, "diag")
        sub = _as_complex_vector(self.sub, "sub")
        sup = _as_complex_vector(self.sup, "sup")
        n = diag.size
        if n < 1:
            raise ValueError("order must be positive")
        if sub.size != n - 1 or sup.size != n - 1:
            raise ValueError(
                f"off-diagonal lengths must be {n - 1}, got sub={sub.size}, sup={sup.size}"
            )
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "sup", sup)
        object.__setattr__(self, "n", n)

    @classmethod
    def from_dense(cls, A, tol=0.0):
        A = as_dense(A)
        n = A.shape[0]
        band = np.triu(np.tril(A, 1), -1)
        if np.abs(A - band).max(initial=0.0) > tol:
            raise ValueError("matrix is not tridiagonal")
        return cls(np.diag(A, -1), np.diag(A), np.diag(A, 1))

    def to_dense(self):
        A = np.diag(self.diag)
        if self.n > 1:
            A += np.diag(self.sub, -1) + np.diag(self.sup, 1)
        return A

    def conj_transpose(self):
        return TridiagonalMatrix(self.sup.conj(), self.diag.conj(), self.sub.conj())

    def leading(self, m):
        """Leading m x m principal block."""
        if not 1 <= m <= self.n:
            raise ValueError(f"block order {m} outside 1..{self.n}")
        return TridiagonalMatrix(self.sub[: m - 1], self.diag[:m], self.sup[: m - 1])

    def trace(self):
        return complex(self.diag.sum())

    def is_hermitian(self, tol=1e-14):
        scale = tol * max(1.0, np.abs(self.diag).max(initial=0.0), np.abs(self.sub).max(initial=0.0))
        return bool(
            np.all(np.abs(self.diag.imag) <= scale)
            and np.all(np.abs(self.sub - self.sup.conj()) <= scale)
        )

    def is_real_symmetric(self, tol=1e-14):
        return self.is_hermitian(tol) and bool(
            np.all(np.abs(self.sub.imag) <= tol * max(1.0, np.abs(self.sub).max(initial=0.0)))
        )

    def equals(self, other):
        """Exact entrywise equality."""
        return (
            self.n == other.n
            and np.array_equal(self.diag, other.diag)
            and np.array_equal(self.sub, other.sub)
            and np.array_equal(self.sup, other.sup)
        )

    def __add__(self, other):
        if not isinstance(other, TridiagonalMatrix) or other.n != self.n:
            return NotImplemented
        return TridiagonalMatrix(self.sub + other.sub, self.diag + other.diag, self.sup + other.sup)

    def __sub__(self, other):
        if not isinstance(other, TridiagonalMatrix) or other.n != self.n:
            return NotImplemented
        return TridiagonalMatrix(self.sub - other.sub, self.diag - other.diag, self.sup - other.sup)

    def __repr__(self):
        return f"TridiagonalMatrix(n={self.n})"


def as_dense(A):
    """Return ``A`` as a finite, square ``complex128`` array (copied)."""
    if isinstance(A, TridiagonalMatrix):
        return A.to_dense()
    arr = np.array(A, dtype=np.complex128, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"expected a nonempty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix contains non-finite entries")
    return arr


def order(A):
    return A.n if isinstance(A, TridiagonalMatrix) else np.shape(A)[0]
