"""Outlier counts q_eps(n, S) and attraction profiles.

Trend and order estimates here are heuristics over a finite ladder; the
reports always carry the raw counts and distances they were derived from.
"""

from dataclasses import dataclass, field

import numpy as np

from speclab.analysis.distribution import ladder_spectra
from speclab.numkernel import Spectrum
from speclab.symbols import IntervalUnion

ATTRACTION_SHRINK_FACTOR = 2.0
TRENDS = ("bounded", "sublinear", "linear")


def _eigenvalues(spec):
    return spec.eigenvalues if isinstance(spec, Spectrum) else np.asarray(spec, dtype=np.complex128)


def _as_union(S):
    if isinstance(S, IntervalUnion):
        return S
    return IntervalUnion(tuple(S))


def cluster_count(spec, S, eps):
    """Number of eigenvalues at distance >= eps from the interval union S."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    d = _as_union(S).distance(_eigenvalues(spec))
    return int(np.count_nonzero(d >= eps))


def classify_trend(ladder, counts):
    """Least-squares fit of counts against c, c*sqrt(n), c*n (through the origin).

    Returns ``(trend, residuals)``; ties go to the slower growth model.
    """
    n = np.asarray(ladder, dtype=np.float64)
    q = np.asarray(counts, dtype=np.float64)
    residuals = {}
    for name, basis in zip(TRENDS, (np.ones_like(n), np.sqrt(n), n)):
        c = float(q @ basis / (basis @ basis))
        residuals[name] = float(np.linalg.norm(q - c * basis))
    best = min(TRENDS, key=lambda name: (residuals[name], TRENDS.index(name)))
    return best, residuals


@dataclass
class ClusterReport:
    n_ladder: list
    eps_grid: list
    S: IntervalUnion
    counts: dict = field(default_factory=dict)  # (n, eps) -> q
    max_count: dict = field(default_factory=dict)
    trend: dict = field(default_factory=dict)
    trend_residuals: dict = field(default_factory=dict)

    def series(self, eps):
        return [self.counts[(n, eps)] for n in self.n_ladder]

    def monotone_in_eps(self):
        """q_eps nonincreasing in eps at every rung."""
        eps_sorted = sorted(self.eps_grid)
        return all(
            self.counts[(n, e2)] <= self.counts[(n, e1)]
            for n in self.n_ladder
            for e1, e2 in zip(eps_sorted, eps_sorted[1:])
        )

    def to_dict(self):
        return {
            "n_ladder": list(self.n_ladder),
            "eps_grid": list(self.eps_grid),
            "S": self.S.to_list(),
            "per_eps": [
                {
                    "eps": e,
                    "counts": self.series(e),
                    "max_count": self.max_count[e],
                    "trend": self.trend[e],
                    "trend_residuals": self.trend_residuals[e],
                    "heuristic": True,
                }
                for e in self.eps_grid
            ],
        }

    def rows(self):
        for e in self.eps_grid:
            for n in self.n_ladder:
                q = self.counts[(n, e)]
                yield {"n": n, "eps": e, "count": q, "ratio": q / n}


def cluster_profile(family, S, eps_grid, n_ladder, spectra=None):
    ladder = [int(n) for n in n_ladder]
    if spectra is None:
        spectra = ladder_spectra(family, ladder)
    S = _as_union(S)
    report = ClusterReport(ladder, [float(e) for e in eps_grid], S)
    for e in report.eps_grid:
        for n in ladder:
            report.counts[(n, e)] = cluster_count(spectra[n], S, e)
        series = report.series(e)
        report.max_count[e] = max(series)
        report.trend[e], report.trend_residuals[e] = classify_trend(ladder, series)
    return report


@dataclass
class AttractionReport:
    """Distances from ``point`` to its j_max nearest eigenvalues per rung.

    ``estimated_order`` counts the leading distances that shrank by at least
    ATTRACTION_SHRINK_FACTOR from the first to the last rung; 0 means no
    attraction was seen, and the string ``"infinite (up to j_max)"`` means
    every tracked distance shrank.
    """

    point: complex
    n_ladder: list
    j_max: int
    distances: dict = field(default_factory=dict)  # n -> list of j_max floats
    shrink_ratios: list = field(default_factory=list)
    estimated_order: object = 0

    @property
    def order_is_infinite(self):
        return isinstance(self.estimated_order, str)

    def to_dict(self):
        p = complex(self.point)
        return {
            "point": [p.real, p.imag],
            "n_ladder": list(self.n_ladder),
            "j_max": self.j_max,
            "distances": [self.distances[n] for n in self.n_ladder],
            "shrink_ratios": self.shrink_ratios,
            "estimated_order": self.estimated_order,
            "heuristic": True,
        }

    def rows(self):
        p = complex(self.point)
        for n in self.n_ladder:
            for rank, d in enumerate(self.distances[n], start=1):
                yield {"point_re": p.real, "point_im": p.imag, "n": n, "rank": rank, "distance": d}


def nearest_distances(spec, s, j_max):
    d = np.abs(_eigenvalues(spec) - s)
    return [float(x) for x in np.sort(d)[:j_max]]


def attraction_profile(family, s, n_ladder, j_max, spectra=None):
    ladder = [int(n) for n in n_ladder]
    if j_max < 1 or j_max > min(ladder):
        raise ValueError("need 1 <= j_max <= smallest rung")
    if spectra is None:
        spectra = ladder_spectra(family, ladder)
    report = AttractionReport(complex(s), ladder, int(j_max))
    for n in ladder:
        report.distances[n] = nearest_distances(spectra[n], s, j_max)
    first, last = report.distances[ladder[0]], report.distances[ladder[-1]]
    report.shrink_ratios = [f / l if l > 0 else float("inf") for f, l in zip(first, last)]
    order = 0
    for ratio in report.shrink_ratios:
        if ratio < ATTRACTION_SHRINK_FACTOR:
            break
        order += 1
    report.estimated_order = f"infinite (up to {j_max})" if order == j_max else order
    return report
