import csv
import io
import json
import subprocess
import sys

import pytest

from cubeslides import cli
from cubeslides import trees as tr


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv, out=out)
    return code, out.getvalue()


def test_count():
    assert run(["count", "--n", "3"]) == (0, "384\n")
    assert run(["count", "--n", "4"]) == (0, "42467328\n")
    assert run(["count", "--n", "5", "--method", "kirchhoff"]) == (0, "20776019874734407680\n")


def test_count_usage_errors():
    assert run(["count", "--n", "4", "--method", "enumerate"])[0] == 2
    assert run(["count", "--n", "0"])[0] == 2
    assert run(["count"])[0] == 2
    assert run(["count", "--n", "3", "--bogus"])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_enumerate_masks_increasing():
    code, text = run(["enumerate", "--n", "3", "--format", "mask"])
    masks = [int(x) for x in text.split()]
    assert code == 0 and len(masks) == 384
    assert all(a < b for a, b in zip(masks, masks[1:]))


def test_enumerate_jsonl():
    code, text = run(["enumerate", "--n", "3"])
    recs = [json.loads(l) for l in text.splitlines()]
    assert len(recs) == 384 and all(len(r["edges"]) == 7 for r in recs)


def test_verify_suite(capsys):
    code, text = run(["--verbose", "verify", "--n", "3", "--suite", "weights"])
    assert code == 0
    rows = [json.loads(l) for l in text.splitlines()]
    assert rows and all(r["passed"] and r["suite"] == "weights" for r in rows)
    assert "PASS" in capsys.readouterr().err


def test_verify_failure_exit_code(monkeypatch):
    from cubeslides import verify
    monkeypatch.setitem(verify.SUITES, "weights", lambda: [verify.Check("weights", "forced", False)])
    assert run(["verify", "--suite", "weights"])[0] == 1


def test_slide_graph_outputs(tmp_path):
    dot, census = tmp_path / "g.dot", tmp_path / "c.csv"
    code, text = run(["slide-graph", "--n", "3", "--dot", str(dot), "--census", str(census)])
    assert code == 0
    summary = json.loads(text)
    assert summary["nodes"] == 384 and summary["edges"] == 768
    assert sorted(c["size"] for c in summary["components"]) == [16] * 12 + [64] * 3
    assert dot.read_text().startswith("graph E3 {")
    assert len(list(csv.DictReader(census.open()))) == 15


def test_bijection_reference_tree():
    code, text = run(["bijection", "--tree", "2421"])
    rec = json.loads(text)
    assert code == 0
    assert [(c["set"], c["dir"], c["sign"]) for c in rec["choices"]] == [(3, 2, -1), (5, 1, -1), (6, 2, -1), (7, 3, -1)]


def test_bijection_stdin_round_trip(monkeypatch):
    tree = json.dumps({"n": 3, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [4, 1], [4, 2], [3, 3]]})
    code, ss = run(["bijection", "--stdin-json"], stdin=tree, monkeypatch=monkeypatch)
    assert code == 0
    code, back = run(["bijection", "--stdin-json", "--inverse"], stdin=ss, monkeypatch=monkeypatch)
    assert code == 0
    assert tr.from_record(json.loads(back)) == tr.from_record(json.loads(tree))


def test_bijection_usage_errors(monkeypatch):
    assert run(["bijection"])[0] == 2
    assert run(["bijection", "--tree", "7"])[0] == 2
    assert run(["bijection", "--stdin-json"], stdin="{not json", monkeypatch=monkeypatch)[0] == 2
    assert run(["bijection", "--stdin-json", "--inverse"], stdin='{"n":3,"choices":[]}', monkeypatch=monkeypatch)[0] == 2


def test_normalize():
    code, text = run(["normalize", "--n", "3", "--tree", "[[0,1],[2,1],[4,1],[6,1],[0,2],[4,2],[0,3]]"])
    assert code == 0
    assert tr.is_upright(tr.from_record(json.loads(text)))
    assert run(["normalize", "--tree", "12"])[0] == 2
    assert run(["normalize", "--n", "3", "--tree", "[[0,1]]"])[0] == 2


def test_sample_reproducible():
    a = run(["sample", "--n", "4", "--count", "3", "--seed", "5"])
    b = run(["sample", "--n", "4", "--count", "3", "--seed", "5"])
    assert a == b and a[0] == 0
    recs = [json.loads(l) for l in a[1].splitlines()]
    assert [r["index"] for r in recs] == [0, 1, 2] and recs[0]["rng"] == "PCG64/v1"
    assert run(["sample", "--n", "9"])[0] == 2


def test_search_and_fixture(tmp_path, monkeypatch):
    path = tmp_path / "w.json"
    code, text = run(["search", "--kind", "excess", "--n", "4", "--budget", "1000", "--fixture", str(path)])
    assert code == 0
    rec = json.loads(text)
    assert rec["seed"] == 2012 and len(rec["slidable"]) > rec["k"] - 1
    assert json.loads(path.read_text())[0]["kind"] == "excess"
    monkeypatch.setenv("CUBESLIDES_THREADS", "2")
    assert run(["search", "--kind", "excess", "--n", "4", "--budget", "1000"]) == (0, text)


def test_search_not_found_and_usage(monkeypatch):
    assert run(["search", "--kind", "excess", "--n", "4", "--budget", "3", "--min-excess", "40"])[0] == 3
    assert run(["search", "--kind", "excess", "--n", "3"])[0] == 2
    assert run(["search", "--kind", "dependent", "--n", "5", "--min-excess", "2"])[0] == 2
    monkeypatch.setenv("CUBESLIDES_THREADS", "many")
    assert run(["search", "--kind", "excess", "--n", "4"])[0] == 2


def test_module_entry_point_is_byte_identical():
    cmd = [sys.executable, "-m", "cubeslides", "sample", "--n", "5", "--count", "2"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.count(b"\n") == 2
    bad = subprocess.run([sys.executable, "-m", "cubeslides", "count"], capture_output=True)
    assert bad.returncode == 2 and bad.stdout == b""
