from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from almostcongruent.cli import run_command


def run(*argv, env_cache=None):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_classify():
    code, out, _ = run("classify", "--sides", "1,1,1")
    assert code == 0 and json.loads(out) == {"type": "equilateral"}
    assert out.strip() == '{"type": "equilateral"}'


def test_lagrangian_c5():
    code, out, _ = run("lagrangian", "--graph", "C5", "--restarts", "20")
    assert code == 0
    assert abs(json.loads(out)["lower"] - 0.04) < 1e-9


def test_lagrangian_certify():
    code, out, _ = run("lagrangian", "--graph", "H5", "--restarts", "10", "--certify", str(1 / 16 + 1e-6))
    data = json.loads(out)
    assert data["certificate"]["certified"] and data["certified_upper"] == pytest.approx(1 / 16 + 1e-6)
    code, out, _ = run("lagrangian", "--graph", "C5", "--restarts", "5", "--certify", "0.039")
    assert json.loads(out)["certificate"]["certified"] is False


def test_graph_file(tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"n": 4, "edges": [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]}))
    code, out, _ = run("lagrangian", "--graph", str(f), "--restarts", "5")
    assert abs(json.loads(out)["lower"] - 1 / 16) < 1e-9


def test_forbidden_catalog():
    code, out, _ = run("forbidden", "--sides", "1,1.7320508075688772,2")
    data = json.loads(out)
    assert data["verdicts"]["J4"] == "forbidden"
    assert "realizable" in data["verdicts"]["F32"]


def test_congruence_graph(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"points": [[0, 0], [1, 0], [0, 1.7320508075688772], [1, 1.7320508075688772]]}))
    code, out, _ = run("congruence-graph", "--points", str(f), "--sides", "1,1.7320508075688772,2")
    assert code == 0 and json.loads(out)["num_edges"] == 4


def test_realize():
    code, out, _ = run("realize", "--sides", "1,1,1.7320508075688772", "--graph", "K4_3minus")
    data = json.loads(out)
    assert not data["exactly_forbidden"] and any(r["distinct"] for r in data["realizations"])
    code, out, _ = run("realize", "--sides", "1,1.1,1.25", "--point-sets")
    assert [len(s["points"]) for s in json.loads(out)["point_sets"]] == [3]


def test_bounds_and_construct(tmp_path):
    code, out, _ = run("bounds", "--sides", "1,1.1,1.25", "--n", "6")
    data = json.loads(out)
    assert (data["lower"], data["upper"], data["upper_provenance"]) == (8, 8, "SelfContained")
    emit = tmp_path / "pts.json"
    code, out, _ = run("construct", "--type", "b", "--n", "9", "--sides", "1,1,1.7320508075688772", "--emit", str(emit))
    assert code == 0
    data = json.loads(out)
    assert data["sizes"] == [2, 2, 2, 3] and data["count"] == 36
    assert len(json.loads(emit.read_text())["points"]) == 9


def test_construct_divisibility_error():
    code, out, err = run("construct", "--type", "a", "--n", "6", "--sides", "1,2,2.23606797749979")
    assert code == 2 and "divisible" in err and out == ""


def test_turan_and_enumerate():
    code, out, _ = run("turan", "--n", "6", "--forbid", "F5,K4_3minus", "--witnesses")
    assert json.loads(out)["value"] == 8
    code, out, _ = run("enumerate", "--n", "5", "--forbid", "K4_3minus", "--min-edges", "3")
    data = json.loads(out)
    assert data["count"] == 7
    assert sorted(c["name"] for c in data["classes"]) == sorted(["F5", "F32", "C5", "C5minus", "H1", "H2", "H3"])


def test_verify_lemmas():
    code, out, _ = run("verify", "--lemma", "five-vertex-classification")
    data = json.loads(out)
    assert code == 0 and data["reports"][0]["status"] == "Pass"
    assert len(data["reports"][0]["evidence"]["classes"]) == 7
    code, out, _ = run("verify", "--lemma", "h4-uniqueness")
    assert code == 0 and json.loads(out)["reports"][0]["evidence"]["classes"] == ["H4"]


def test_verify_unknown_lemma():
    code, out, err = run("verify", "--lemma", "nonexistent")
    assert code == 2 and "unknown lemma" in err


def test_validation_errors():
    assert run("classify", "--sides", "1,1")[0] == 2
    assert run("classify", "--sides", "1,1,5")[0] == 2
    assert run("classify", "--sides", "a,b,c")[0] == 2
    assert run("lagrangian", "--graph", "NOPE")[0] == 2
    assert run("turan", "--n", "9", "--forbid", "F5")[0] == 2
    assert run("turan", "--n", "5", "--forbid", "F6")[0] == 2
    assert run("nonsense")[0] == 2
    assert run()[0] == 2


def test_ambiguous_exit_code(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"points": [[0, 0], [1.0000001, 0], [0.5, 0.8660254037844386]]}))
    code, out, err = run("congruence-graph", "--points", str(f), "--sides", "1,1,1")
    assert code == 3 and "ambiguous" in err


def test_output_is_reproducible():
    a = run("lagrangian", "--graph", "F32", "--restarts", "30", "--seed", "4")[1]
    b = run("lagrangian", "--graph", "F32", "--restarts", "30", "--seed", "4")[1]
    assert a == b
    a = run("verify", "--lemma", "construction-counts")[1]
    assert a == run("verify", "--lemma", "construction-counts")[1]


def test_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("ALMOSTCONGRUENT_CACHE_DIR", str(tmp_path / "cache"))
    first = run("bounds", "--sides", "1,1,1.7320508075688772", "--n", "9")
    files = list((tmp_path / "cache").iterdir())
    assert len(files) == 1
    second = run("bounds", "--sides", "1,1,1.7320508075688772", "--n", "9")
    assert first == second
    # a tampered cache entry is served, proving the hit
    files[0].write_text('{"cached": true}')
    assert json.loads(run("bounds", "--sides", "1,1,1.7320508075688772", "--n", "9")[1]) == {"cached": True}
    code, _, _ = run("--cache-dir", str(tmp_path / "other"), "classify", "--sides", "1,1,1")
    assert code == 0 and len(list((tmp_path / "other").iterdir())) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "almostcongruent", "classify", "--sides", "3,4,5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"type": "right"}


def test_truncated_sides_are_ambiguous():
    code, out, err = run("construct", "--type", "b", "--n", "9", "--sides", "1,1,1.7320508")
    assert code == 3 and out == ""
