"""Moment gaps of the free Jacobi matrix against the arcsine law.

Prints |mean(z^{2q}) - C(2q,q)| * n next to the closed form 4^q - C(2q,q).
"""

import argparse
import math

from speclab.analysis import Monomial, distribution_compare
from speclab.sequences import FREE_BACKGROUND, CoefficientSequence
from speclab.symbols import periodic_symbol


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ladder", type=int, nargs="+", default=[64, 256, 1024])
    parser.add_argument("--qmax", type=int, default=4)
    args = parser.parse_args()
    tests = [Monomial(2 * q) for q in range(1, args.qmax + 1)]
    rep = distribution_compare(CoefficientSequence(), periodic_symbol(FREE_BACKGROUND), tests, args.ladder)
    print(f"{'q':>3} {'n':>6} {'gap':>12} {'gap*n':>10} {'closed':>8}")
    for q, F in enumerate(tests, start=1):
        closed = 4**q - math.comb(2 * q, q)
        for n, gap in zip(rep.n_ladder, rep.gaps[F.label]):
            print(f"{q:>3} {n:>6} {gap:>12.6g} {gap * n:>10.6g} {closed:>8}")


if __name__ == "__main__":
    main()
