"""Run every config in configs/ and summarize the exit statuses.

    python3 scripts/run_configs.py [--out DIR] [configs ...]
"""

import argparse
import glob
import os
import time

from speclab.cli import run

HERE = os.path.dirname(os.path.abspath(__file__))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("configs", nargs="*")
    parser.add_argument("--out", default="runs")
    args = parser.parse_args()
    paths = args.configs or sorted(glob.glob(os.path.join(HERE, "..", "configs", "*.ini")))
    worst = 0
    for path in paths:
        name = os.path.splitext(os.path.basename(path))[0]
        t0 = time.perf_counter()
        status = run(path, out=os.path.join(args.out, name))
        print(f"  exit {status} in {time.perf_counter() - t0:.1f}s")
        worst = max(worst, status)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
