"""Outlier counts and nearest-eigenvalue distances for a preset along a ladder.

    python3 scripts/clustering_ladder.py trace_class_demo --ladder 128 256 512 --eps 0.1 0.25
"""

import argparse

from speclab.analysis import attraction_profile, cluster_profile, ladder_spectra
from speclab.sequences import PRESETS, preset
from speclab.symbols import essential_range, periodic_symbol


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("preset", choices=sorted(PRESETS))
    parser.add_argument("--ladder", type=int, nargs="+", default=[64, 128, 256, 512])
    parser.add_argument("--eps", type=float, nargs="+", default=[0.1])
    parser.add_argument("--points", type=complex, nargs="*", default=[-2, 0, 2, 5])
    parser.add_argument("--j-max", type=int, default=3)
    args = parser.parse_args()

    seq = preset(args.preset)
    S = essential_range(periodic_symbol(seq.background))
    spectra = ladder_spectra(seq, args.ladder)
    print(f"S = {S.to_list()}")
    prof = cluster_profile(seq, S, args.eps, args.ladder, spectra=spectra)
    for e in prof.eps_grid:
        counts = prof.series(e)
        print(f"eps={e:g}: counts {counts}, q/n {[round(q / n, 5) for q, n in zip(counts, args.ladder)]}, trend {prof.trend[e]}")
    for s in args.points:
        rep = attraction_profile(seq, s, args.ladder, args.j_max, spectra=spectra)
        first, last = rep.distances[args.ladder[0]], rep.distances[args.ladder[-1]]
        print(f"s={s}: nearest {[f'{d:.3g}' for d in first]} -> {[f'{d:.3g}' for d in last]}, order {rep.estimated_order}")


if __name__ == "__main__":
    main()
