import json
import os
import subprocess
import sys
import time

import pytest

from paraclass.cli import main
from paraclass.report import EXAMPLES, ResultCache, dumps, run_scan, verify_example


@pytest.fixture()
def cache_file(tmp_path, monkeypatch):
    path = tmp_path / "cache.jsonl"
    monkeypatch.setenv("PARACLASS_CACHE", str(path))
    return path


def test_scan_small_rows_and_timing():
    t0 = time.perf_counter()
    rep = run_scan(10, 1)
    assert time.perf_counter() - t0 < 1.0
    assert [r["d"] for r in rep["rows"]] == [2, 3, 5, 6, 7, 10]


def test_scan_is_deterministic_and_parallel_safe():
    a = dumps(run_scan(40, 1))
    b = dumps(run_scan(40, 3))
    assert a == b


def test_scan_diff_carries_certificates():
    diff = run_scan(100, 2)["diff"]
    lau = diff["laurent"]
    assert lau["agreeing_published_entries"] >= 12
    assert {e["d"] for e in lau["disagreements"]} == {5, 21, 23}
    for e in lau["disagreements"]:
        assert e["certificate"]["checked"]
        assert (e["certificate"]["index"] == 1) == e["computed"]
    assert 23 in {e["d"] for e in diff["pid"]["disagreements"]}


def test_scan_never_overwrites_published():
    rep = run_scan(100, 1)
    assert 23 in rep["diff"]["laurent"]["published"]
    assert 23 not in rep["diff"]["laurent"]["computed"]


@pytest.mark.parametrize("name", EXAMPLES)
def test_verify_examples_pass(name):
    res = verify_example(name)
    assert res.passed, "\n".join(res.transcript)


def test_verify_d10_matrices():
    res = verify_example("d10")
    m = res.data["matrices"]
    assert m == {"action_on_J": [[2, 3], [3, 4]], "action_on_A": [[0, 1], [1, 6]], "inclusion": [[3, -2], [0, 1]]}


def test_verify_unknown_name():
    with pytest.raises(KeyError):
        verify_example("nope")


def test_cache_round_trip(cache_file):
    c = ResultCache()
    c.put("quad", 10, {"x": 1})
    c.put("quad", 10, {"x": 2})  # append-only: the first value stands
    c.put("scan_row", 3, {"y": [1, 2]})
    again = ResultCache()
    assert again.get("quad", 10) == {"x": 1}
    assert again.get("scan_row", "3") == {"y": [1, 2]}
    lines = cache_file.read_text().splitlines()
    assert len(lines) == 2 and all(json.loads(l)["schema"] == 1 for l in lines)
    assert not [p for p in cache_file.parent.iterdir() if p.name.endswith(".tmp")]


def test_scan_uses_cache(cache_file):
    c = ResultCache()
    first = run_scan(12, 1, c)
    assert cache_file.exists()
    second = run_scan(12, 1, ResultCache())
    assert dumps(first) == dumps(second)


def test_cli_exit_codes(cache_file, capsys):
    assert main(["verify", "--example", "d10"]) == 0
    assert main(["cyclo", "--n", "12"]) == 0
    assert main(["group", "--preset", "wreath_zz", "--op", "classify"]) == 1
    assert main(["group", "--preset", "nonsense", "--op", "fp"]) == 2
    assert main(["quad", "--d", "12"]) == 2
    assert main(["scan"]) == 2
    assert main(["bogus"]) == 2


def test_cli_group_json(cache_file, capsys):
    assert main(["group", "--preset", "wreath_zz", "--op", "hilbert", "--depth", "6", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ranks"] == [2, 1, 1, 1, 1, 1]
    assert main(["group", "--preset", "quad:10", "--op", "lcs", "--depth", "4", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert all(layer["routes_agree"] for layer in out["layers"])


def test_cli_scan_out_file(cache_file, tmp_path):
    out = tmp_path / "scan.json"
    assert main(["scan", "--max-d", "15", "--jobs", "2", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["max_d"] == 15 and data["rows"][0]["d"] == 2


def test_console_entry_point(cache_file):
    proc = subprocess.run([sys.executable, "-m", "paraclass", "verify", "--example", "telescope"],
                          capture_output=True, text=True, env=os.environ.copy())
    assert proc.returncode == 0 and "telescope: PASS" in proc.stdout
