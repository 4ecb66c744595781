import csv
import json
import math
import subprocess
import sys

import pytest

from cli_fixtures import FAILING, MALFORMED, VALID
from speclab.cli import list_presets, main
from speclab.cli.config import parse_config
from speclab.cli.experiments import Check, Outcome
from speclab.errors import ConfigInvalid


def _run(tmp_path, name, text, *extra):
    cfg = tmp_path / f"{name}.ini"
    cfg.write_text(text)
    out = tmp_path / f"out-{name}"
    status = main(["run", str(cfg), "--out", str(out), *extra])
    return status, out


def _csv_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _as_number(text):
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def _same(a, b):
    if isinstance(a, float) or isinstance(b, float):
        if isinstance(b, str):
            b = float(b)
        return (math.isnan(a) and math.isnan(b)) or a == b
    return a == b


@pytest.mark.parametrize("name", sorted(VALID))
def test_valid_configs(tmp_path, name):
    text, expected = VALID[name]
    status, out = _run(tmp_path, name, text)
    assert status == expected
    doc = json.loads((out / "report.json").read_text())
    assert doc["exit_status"] == status
    rows = _csv_rows(out / "report.csv")
    assert len(rows) == len(doc["rows"]) > 0
    # CSV is a projection of the JSON rows
    for row, jrow in zip(rows, doc["rows"]):
        assert list(row) == doc["columns"]
        for col, text_value in row.items():
            assert _same(jrow[col], _as_number(text_value)), (col, text_value, jrow[col])


@pytest.mark.parametrize("name", sorted(FAILING))
def test_failing_configs(tmp_path, name):
    text, expected = FAILING[name]
    status, out = _run(tmp_path, name, text)
    assert status == expected
    doc = json.loads((out / "report.json").read_text())
    assert doc["solver_failures"] and doc["solver_failures"][0]["n"] == 40
    assert [r["n"] for r in doc["rows"]] == [8, 8, 8, 8]


@pytest.mark.parametrize("name", sorted(MALFORMED))
def test_malformed_configs(tmp_path, name, capsys):
    text, expected = MALFORMED[name]
    status, out = _run(tmp_path, name, text)
    assert status == expected
    assert not out.exists()
    assert "config error" in capsys.readouterr().err


def test_diagnostics_name_field_and_line():
    with pytest.raises(ConfigInvalid) as info:
        parse_config(MALFORMED["negative_eps"][0])
    assert info.value.field == "cluster.eps" and info.value.line == 6
    assert "[cluster.eps, line 6]" in str(info.value)
    with pytest.raises(ConfigInvalid) as info:
        parse_config(MALFORMED["missing_ladder"][0])
    assert info.value.field == "ladder.n"


def test_distribution_gaps_match_cosine_sums(tmp_path):
    status, out = _run(tmp_path, "dist", VALID["distribution_free"][0])
    assert status == 0
    rows = [r for r in _csv_rows(out / "report.csv") if r["function"] == "z^2"]
    for r in rows:
        n = int(r["n"])
        mean = math.fsum(4 * math.cos(j * math.pi / (n + 1)) ** 2 for j in range(1, n + 1)) / n
        assert float(r["gap"]) == pytest.approx(abs(mean - 2), abs=1e-12)


def test_byte_identical_reruns(tmp_path):
    text = VALID["inequalities_small"][0]
    _, a = _run(tmp_path, "a", text)
    _, b = _run(tmp_path, "b", text)
    assert (a / "report.csv").read_bytes() == (b / "report.csv").read_bytes()
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


def test_seed_override_changes_random_runs(tmp_path):
    text = VALID["norms_100"][0]
    _, a = _run(tmp_path, "a", text)
    _, b = _run(tmp_path, "b", text, "--seed", "99")
    assert (a / "report.csv").read_bytes() != (b / "report.csv").read_bytes()
    assert json.loads((b / "report.json").read_text())["config"]["seed"] == 99


def test_no_temp_files_left(tmp_path):
    _, out = _run(tmp_path, "bc", VALID["blockcheck_k3"][0])
    assert sorted(p.name for p in out.iterdir()) == ["report.csv", "report.json"]


def test_exit_status_contract():
    assert Outcome("norms", {}, [], [Check("x", True)]).exit_status == 0
    assert Outcome("norms", {}, [], [Check("x", False, hard=False)]).exit_status == 0
    assert Outcome("norms", {}, [], [Check("x", False)]).exit_status == 2
    assert Outcome("norms", {}, [], [], [{"n": 4}]).exit_status == 2


def test_presets_listing(capsys):
    assert main(["presets"]) == 0
    first = capsys.readouterr().out
    assert main(["presets"]) == 0
    assert capsys.readouterr().out == first == list_presets()
    for name in ("trace_class_demo", "cesaro_demo", "compact_demo", "rank_one_demo", "periodic2_gap"):
        assert f"  {name}:" in first
    names = [line.split(":")[0].strip() for line in first.split("experiment kinds:")[0].splitlines() if line.startswith("  ")]
    presets = names[: names.index("periodic2_gap", names.index("trace_class_demo"))]
    assert presets == sorted(presets)


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["run"])
    assert info.value.code == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "speclab", "presets"], capture_output=True, text=True)
    assert proc.returncode == 0 and "cesaro_demo" in proc.stdout
