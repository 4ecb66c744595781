"""Matrix containers, eigensolvers, singular values and norms."""

from speclab.numkernel.eigen import (
    Spectrum,
    eig_general,
    eig_hermitian,
    eigvals_dense,
    eigvalsh_dense,
    hessenberg,
    spectrum,
)
from speclab.numkernel.matrices import TridiagonalMatrix, as_dense, order
from speclab.numkernel.svd import (
    entrywise_l1,
    hermitian_parts,
    operator_norm,
    singular_values,
    trace_norm,
)

__all__ = [
    "Spectrum",
    "TridiagonalMatrix",
    "as_dense",
    "eig_general",
    "eig_hermitian",
    "eigvals_dense",
    "eigvalsh_dense",
    "entrywise_l1",
    "hermitian_parts",
    "hessenberg",
    "operator_norm",
    "order",
    "singular_values",
    "spectrum",
    "trace_norm",
]
