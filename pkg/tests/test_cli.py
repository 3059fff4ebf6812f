"""End-to-end runs of the command line through a real subprocess."""

import csv
import json
import os
import re
import subprocess
import sys

import numpy as np

from tnm import SampleSet


def run(*args, env=None):
    cmd = [sys.executable, "-m", "tnm", *args]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


def has_line(text, key, value):
    """True when some aligned key-value line pairs `key` with `value`."""
    return re.search(rf"^{re.escape(key)}\s\s+{re.escape(value)}$", text, re.M) is not None


# ---------------------------------------------------------------------------
# classify / threshold


def test_classify_json_values():
    res = run("classify", "--dims", "3,3", "--samples", "2")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["R"] == "9"
    assert doc["Delta"] == "1"
    assert doc["g_max"] == "3"
    assert doc["class"] == "polystable_not_stable"
    assert doc["git_dimension"] == "3"
    assert doc["classifiers_agree"] is True
    assert doc["indices"] == ["1", "1"]
    assert doc["castling_trace"] == [{"dims": [3, 3], "m": 2}]
    assert doc["mle_profile"]["unique_as"] is False


def test_classify_json_zero_margin():
    res = run("classify", "--dims", "2,2,3", "--samples", "1")
    doc = json.loads(res.stdout)
    assert res.returncode == 0
    assert doc["R"] == "0"
    assert doc["class"] == "polystable_not_stable"
    assert doc["git_dimension"] == "0"
    assert doc["castling_trace"][-1] == {"dims": [2, 2], "m": 1}


def test_classify_text_format():
    res = run("classify", "--dims", "2,3", "--samples", "1", "--format", "text")
    assert res.returncode == 0
    assert has_line(res.stdout, "class", "unstable")
    assert has_line(res.stdout, "git dimension", "empty")
    assert has_line(res.stdout, "always unbounded", "True")


def test_usage_errors_exit_2():
    assert run("classify", "--dims", "2,3").returncode == 2  # --samples missing
    assert run("classify", "--dims", "2,x", "--samples", "1").returncode == 2
    assert run("classify", "--dims", "0", "--samples", "1").returncode == 2
    res = run("verify", "--trials", "1")
    assert res.returncode == 2
    assert "--dims and --samples" in res.stderr


def test_threshold_json():
    res = run("threshold", "--dims", "4,4")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc == {"dims": [4, 4], "mlt_b": "1", "mlt_e": "1", "mlt_u": "3",
                   "cor_bounds": None}
    res = run("threshold", "--dims", "2,2,8")
    doc = json.loads(res.stdout)
    assert (doc["mlt_b"], doc["mlt_u"], doc["cor_bounds"]) == ("2", "3", ["2", "3"])


# ---------------------------------------------------------------------------
# scan


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_scan_equivalence(tmp_path):
    out = tmp_path / "scan.csv"
    res = run("scan", "--max-k", "2", "--max-dim", "4", "--max-m", "2",
              "--out", str(out), "--threads", "1")
    assert res.returncode == 0
    rows = read_csv(out)
    assert rows[0] == ["dims", "m", "R", "Delta", "g_max",
                       "class_closed_form", "class_recursive", "agree"]
    assert len(rows) == 1 + 10 * 2  # (1,) plus 9 multisets of {2,3,4}, two m each
    assert all(r[-1] == "True" for r in rows[1:])
    assert "failures=0" in res.stdout


def test_scan_other_checks(tmp_path):
    for check in ("monotone", "castling"):
        out = tmp_path / f"{check}.csv"
        res = run("scan", "--max-k", "3", "--max-dim", "4", "--max-m", "2",
                  "--check", check, "--out", str(out), "--threads", "1")
        assert res.returncode == 0, res.stderr
        assert "failures=0" in res.stdout


def test_scan_smallest_grid(tmp_path):
    out = tmp_path / "one.csv"
    res = run("scan", "--max-k", "1", "--max-dim", "1", "--max-m", "1",
              "--out", str(out), "--threads", "1")
    assert res.returncode == 0
    rows = read_csv(out)
    assert len(rows) == 2
    assert rows[1][:2] == ["1", "1"]


def test_scan_rejects_bad_bounds(tmp_path):
    res = run("scan", "--max-k", "0", "--max-dim", "3", "--max-m", "1",
              "--out", str(tmp_path / "x.csv"), "--threads", "1")
    assert res.returncode == 2


# ---------------------------------------------------------------------------
# simulate / verify


def test_simulate_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    r1 = run("simulate", "--dims", "2,3", "--samples", "2", "--seed", "4", "--out", str(a))
    r2 = run("simulate", "--dims", "2,3", "--samples", "2", "--seed", "4", "--out", str(b))
    assert r1.returncode == 0 and r2.returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_simulate_env_seed(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    env = {**os.environ, "TNM_SEED": "7"}
    run("simulate", "--dims", "2", "--samples", "3", "--out", str(a), env=env)
    run("simulate", "--dims", "2", "--samples", "3", "--seed", "7", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    run("simulate", "--dims", "2", "--samples", "3", "--out", str(a))  # default seed 0
    assert a.read_bytes() != b.read_bytes()


def test_verify_stable_scalar_family():
    res = run("verify", "--dims", "1", "--samples", "2", "--trials", "2",
              "--restarts", "2", "--threads", "1", "--format", "json")
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    assert doc["bounded_agrees"] and doc["exists_agrees"] and doc["unique_agrees"]
    assert all(s == "converged" for t in doc["trials"] for s in t["statuses"])


def test_verify_unstable_text():
    res = run("verify", "--dims", "2,3", "--samples", "1", "--trials", "3",
              "--restarts", "2", "--threads", "1")
    assert res.returncode == 0, res.stderr
    assert has_line(res.stdout, "predicted", "unbounded likelihood")
    assert has_line(res.stdout, "all restarts diverged", "3/3")


def test_verify_from_simulated_file(tmp_path):
    path = tmp_path / "data.json"
    run("simulate", "--dims", "2", "--samples", "4", "--seed", "2", "--out", str(path))
    res = run("verify", "--data", str(path), "--restarts", "2", "--threads", "1")
    assert res.returncode == 0, res.stderr
    assert has_line(res.stdout, "unique clause agrees", "yes")


def test_verify_zero_data_is_numerical_failure(tmp_path):
    path = tmp_path / "zeros.json"
    SampleSet((2,), 2, np.zeros(4)).save(path)
    res = run("verify", "--data", str(path), "--restarts", "2", "--threads", "1")
    assert res.returncode == 3


def test_verify_missing_file_exit_2(tmp_path):
    res = run("verify", "--data", str(tmp_path / "absent.json"))
    assert res.returncode == 2
    assert res.stderr.strip()
