import json
from pathlib import Path

import pytest

from cli_help_text import render
from vassiliev.cli import main

GOLDEN = Path(__file__).parent / "golden" / "cli_help.txt"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_help_matches_golden():
    assert render() == GOLDEN.read_text()


def test_link_hopf(capsys):
    code, out, _ = run(capsys, "link", "--a", "hopf_a", "--b", "hopf_b", "--n", "20000", "--seed", "1", "--threads", "2")
    res = json.loads(out)
    assert code == 0
    assert res["combinatorial"] == 1
    assert abs(res["value"] - 1) <= 3 * res["std_error"]


def test_missing_seed_is_input_error(capsys):
    code, _, err = run(capsys, "v2", "--knot", "unknot", "--n", "100")
    assert code == 2 and "seed" in err


def test_bad_arguments(capsys):
    assert run(capsys, "strata", "--points", "9")[0] == 2
    assert run(capsys, "v2", "--knot", "nosuchknot", "--seed", "0", "--n", "10")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2


def test_intersecting_curves_numeric_exit(capsys, tmp_path):
    f = tmp_path / "c.json"
    f.write_text('{"type": "named", "name": "circle", "params": {"center": [1.0, 0.0, 0.0]}}')
    code, _, err = run(capsys, "link", "--a", "unknot", "--b", str(f), "--n", "100", "--seed", "0")
    assert code == 3
    assert json.loads(err)["error"]


def strip_runtime(obj):
    if isinstance(obj, dict):
        return {k: strip_runtime(v) for k, v in obj.items() if k != "runtime_ms"}
    if isinstance(obj, list):
        return [strip_runtime(v) for v in obj]
    return obj


def test_json_reproducible(capsys):
    argv = ("v2", "--knot", "trefoil", "--baseline", "unknot", "--n", "20000", "--seed", "5")
    _, a, _ = run(capsys, *argv, "--threads", "1")
    _, b, _ = run(capsys, *argv, "--threads", "3")
    da, db = json.loads(a), json.loads(b)
    assert json.dumps(strip_runtime(da), sort_keys=True) == json.dumps(strip_runtime(db), sort_keys=True)
    assert set(da) >= {"value", "std_error", "baseline", "difference", "seed", "n_samples"}


def test_enumerate_chords(capsys):
    code, out, _ = run(capsys, "enumerate", "--chords", "3")
    assert code == 0 and json.loads(out)["count"] == 5


def test_enumerate_graphs(capsys):
    code, out, _ = run(capsys, "enumerate", "--graphs", "2")
    res = json.loads(out)
    assert code == 0 and res["count"] == len(res["items"]) > 0


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    res = json.loads(out)
    assert code == 0
    assert all(res[k] == "pass" for k in ("4T", "STU", "IHX", "orientation", "faces"))


def test_strata_census(capsys):
    code, out, _ = run(capsys, "strata", "--points", "3", "--max-codim", "2", "--graph", "tripod")
    res = json.loads(out)
    assert res["counts"] == {"1": 4, "2": 3}
    assert res["faces"]["all_vanish"] and res["faces"]["census"]["Anomalous"] == 1


def test_tinkertoy_difference(capsys):
    code, out, _ = run(capsys, "tinkertoy", "--knot", "trefoil", "--baseline", "unknot", "--trials", "3")
    res = json.loads(out)
    assert code == 0 and res["value"] == "23/24" and res["difference"] == "1"


def test_csv_and_png(capsys, tmp_path):
    out = tmp_path / "trace.csv"
    code, _, _ = run(capsys, "v2", "--knot", "unknot", "--n", "5000", "--seed", "0", "--out", str(out), "--format", "csv")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "series,samples,running_estimate" and len(lines) > 2
    png = out.with_suffix(".png")
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_json_out_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    run(capsys, "enumerate", "--chords", "2", "--out", str(out))
    assert json.loads(out.read_text())["count"] == 2


def test_csv_without_trace_rejected(capsys, tmp_path):
    code, _, _ = run(capsys, "enumerate", "--chords", "2", "--out", str(tmp_path / "x.csv"), "--format", "csv")
    assert code == 2
