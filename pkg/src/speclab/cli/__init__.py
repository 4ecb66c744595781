"""Command line entry point: ``speclab run <config>`` and ``speclab presets``.

Exit status is 0 when every hard check holds, 2 when a check or a solver
fails, and 1 on usage or configuration errors (no files are written then).
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile

from speclab.cli.config import KINDS, load_config
from speclab.cli.experiments import KIND_DOCS, run_experiment
from speclab.errors import ConfigInvalid
from speclab.sequences import PERIODIC_BACKGROUNDS, PRESETS

DEFAULT_OUT = "speclab-out"


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _jsonable(value):
    # JSON has no inf/nan; spell them as strings
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if value != value else ("inf" if value > 0 else "-inf")
    if isinstance(value, complex):
        return [_jsonable(value.real), _jsonable(value.imag)]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return _jsonable(value.item())
    return value


def render_csv(columns, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def render_json(cfg, outcome):
    doc = {
        "config": cfg.to_dict(),
        "kind": outcome.kind,
        "report": outcome.report,
        "columns": outcome.columns,
        "rows": outcome.rows,
        "checks": [c.to_dict() for c in outcome.checks],
        "solver_failures": outcome.failures,
        "exit_status": outcome.exit_status,
    }
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"


def _atomic_write(path, text):
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(config_path, out=None, seed=None, stream=sys.stdout):
    """Run one experiment; returns the exit status."""
    cfg = load_config(config_path)
    if seed is not None:
        if seed < 0:
            raise ConfigInvalid("seed must be nonnegative", field="--seed")
        cfg.seed = seed
    out_dir = out or cfg.out or DEFAULT_OUT
    outcome = run_experiment(cfg)
    csv_text = render_csv(outcome.columns, outcome.rows)
    json_text = render_json(cfg, outcome)
    os.makedirs(out_dir, exist_ok=True)
    _atomic_write(os.path.join(out_dir, "report.json"), json_text)
    _atomic_write(os.path.join(out_dir, "report.csv"), csv_text)
    failed = [c for c in outcome.checks if c.hard and not c.passed]
    print(
        f"{cfg.kind}: {len(outcome.rows)} rows, {len(outcome.checks) - len(failed)}/{len(outcome.checks)}"
        f" checks ok, {len(outcome.failures)} solver failures -> {out_dir}",
        file=stream,
    )
    for c in failed:
        print(f"FAILED {c.name}: {c.detail}", file=stream)
    for f in outcome.failures:
        print(f"SOLVER {f}", file=stream)
    return outcome.exit_status


def list_presets():
    lines = ["sequence presets:"]
    for name in sorted(PRESETS):
        lines.append(f"  {name}: {PRESETS[name][1]}")
    lines.append("periodic backgrounds:")
    for name in sorted(PERIODIC_BACKGROUNDS):
        bg = PERIODIC_BACKGROUNDS[name]
        lines.append(f"  {name}: k={bg.k} a={list(bg.a)} b={list(bg.b)}")
    lines.append("experiment kinds:")
    for kind in KINDS:
        lines.append(f"  {kind}: {KIND_DOCS[kind]}")
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser():
    parser = _Parser(prog="speclab", description="Reproducible spectral experiments on Jacobi matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p_run = sub.add_parser("run", help="run the experiment described by a config file")
    p_run.add_argument("config")
    p_run.add_argument("--out", help="output directory (overrides [experiment] out)")
    p_run.add_argument("--seed", type=int, help="override [experiment] seed")
    sub.add_parser("presets", help="list sequence presets and experiment kinds")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "presets":
        sys.stdout.write(list_presets())
        return 0
    try:
        return run(args.config, args.out, args.seed)
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1


__all__ = ["list_presets", "main", "render_csv", "render_json", "run"]
