"""Finite-section spectral laboratory for perturbed Jacobi and block Toeplitz matrices."""

__version__ = "0.1.0"
