"""Eigenvalue means and their comparison with symbol integrals."""

import math
from dataclasses import dataclass, field

import numpy as np

from speclab._parallel import ordered_map
from speclab.numkernel import Spectrum, TridiagonalMatrix, spectrum
from speclab.sequences import CoefficientSequence, jacobi_section, truncated_block_toeplitz
from speclab.symbols import DEFAULT_QUADRATURE_N, MatrixSymbol, symbol_functional

DEFAULT_GAP_THRESHOLD = 0.05


def eigen_mean(spec, F):
    """(1/n) sum_j F(lambda_j): mean of F over the eigenvalues with multiplicity."""
    lam = spec.eigenvalues if isinstance(spec, Spectrum) else np.asarray(spec)
    if lam.size == 0:
        raise ValueError("empty spectrum")
    vals = np.asarray(F(lam), dtype=np.complex128)
    return complex(math.fsum(vals.real) / lam.size, math.fsum(vals.imag) / lam.size)


def equal_distribution_gap(spec_a, spec_b, tests):
    """|mean_F(B) - mean_F(A)| per test function label."""
    if len(spec_a) != len(spec_b):
        raise ValueError("spectra must have the same order")
    return {F.label: abs(eigen_mean(spec_b, F) - eigen_mean(spec_a, F)) for F in tests}


def family_matrix(family, n):
    """The n-th member of a matrix family.

    A CoefficientSequence yields its Jacobi section, a MatrixSymbol its
    scalar-order truncation, and any callable is called with ``n``.
    """
    if isinstance(family, CoefficientSequence):
        return jacobi_section(family, n)
    if isinstance(family, MatrixSymbol):
        T = truncated_block_toeplitz(family, n)
        if not np.any(np.triu(T, 2)) and not np.any(np.tril(T, -2)):
            return TridiagonalMatrix.from_dense(T)
        return T
    return family(n)


def ladder_spectra(family, n_ladder):
    """{n: Spectrum} for every rung; rungs may be solved concurrently."""
    ladder = list(n_ladder)
    spectra = ordered_map(lambda n: spectrum(family_matrix(family, n)), ladder)
    return dict(zip(ladder, spectra))


@dataclass
class DistributionReport:
    n_ladder: list
    labels: list
    symbol_values: dict
    means: dict = field(default_factory=dict)
    gaps: dict = field(default_factory=dict)
    monotone: dict = field(default_factory=dict)
    converged: dict = field(default_factory=dict)
    threshold: float = DEFAULT_GAP_THRESHOLD

    def to_dict(self):
        return {
            "n_ladder": list(self.n_ladder),
            "threshold": self.threshold,
            "functions": [
                {
                    "label": lab,
                    "symbol_value": [self.symbol_values[lab].real, self.symbol_values[lab].imag],
                    "means": [[m.real, m.imag] for m in self.means[lab]],
                    "gaps": list(self.gaps[lab]),
                    "monotone": self.monotone[lab],
                    "converged": self.converged[lab],
                }
                for lab in self.labels
            ],
        }

    def rows(self):
        for lab in self.labels:
            sv = self.symbol_values[lab]
            for n, m, g in zip(self.n_ladder, self.means[lab], self.gaps[lab]):
                yield {
                    "n": n,
                    "function": lab,
                    "mean_re": m.real,
                    "mean_im": m.imag,
                    "symbol_re": sv.real,
                    "symbol_im": sv.imag,
                    "gap": g,
                }


def distribution_compare(
    family,
    sym,
    tests,
    n_ladder,
    quadrature_n=DEFAULT_QUADRATURE_N,
    threshold=DEFAULT_GAP_THRESHOLD,
    spectra=None,
):
    """Gaps between eigenvalue means of a family and the symbol functional.

    A test function is flagged converged when its last-rung gap is below
    ``threshold`` and at most half of the first-rung gap (or already at
    rounding level).
    """
    ladder = [int(n) for n in n_ladder]
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError("n_ladder must be strictly increasing")
    if spectra is None:
        spectra = ladder_spectra(family, ladder)
    report = DistributionReport(
        ladder,
        [F.label for F in tests],
        {F.label: symbol_functional(sym, F, quadrature_n) for F in tests},
        threshold=threshold,
    )
    for F in tests:
        means = [eigen_mean(spectra[n], F) for n in ladder]
        gaps = [abs(m - report.symbol_values[F.label]) for m in means]
        report.means[F.label] = means
        report.gaps[F.label] = gaps
        report.monotone[F.label] = all(b <= a for a, b in zip(gaps, gaps[1:]))
        shrank = gaps[-1] <= 0.5 * gaps[0] or gaps[-1] <= 1e-12
        report.converged[F.label] = bool(shrank and gaps[-1] < threshold)
    return report
