import json
import subprocess
import sys

import pytest

from bsskein.cli import main
from bsskein.models import GOLDEN_DIR, canonical_json, read_golden


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_clean_exits_zero(capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--report", str(rep))
    assert code == 0
    doc = json.loads(rep.read_text(encoding="utf-8"))
    assert doc["result"] == "pass"
    assert len(doc["checks"]) == 84
    assert "84 passed" in out or "84/84" in out


def test_report_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "--report", str(a))
    run(capsys, "verify", "--report", str(b))
    assert a.read_bytes() == b.read_bytes()
    ids = [c["id"] for c in json.loads(a.read_text())["checks"]]
    assert ids == sorted(ids)


def test_verify_only(capsys):
    code, out, _ = run(capsys, "verify", "--only", "triangle", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["checks"]) == 9
    assert all(c["id"].startswith("triangle.") for c in doc["checks"])


def test_verify_unknown_prefix_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--only", "nothing.here")
    assert code == 2 and "no check matches" in err


def test_list_checks(capsys):
    code, out, _ = run(capsys, "--list-checks")
    ids = out.split()
    assert code == 0 and len(ids) == 84 == len(set(ids))
    assert "algebra.d_squared" in ids and "lattice.6.2.skein" in ids


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and out.startswith("skeinctl ")


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["show"],
    ["show", "--object", "bsd:7"],
    ["show", "--object", "tensor:f1"],
    ["cone", "--k", "2"],
    ["examples", "--which", "6.3"],
    ["verify", "--format", "yaml"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "usage" in err


@pytest.mark.parametrize("obj,golden", [
    ("bsd:1", "bsd_1.json"),
    ("bsd:infty", "bsd_infty.json"),
    ("bsd:0", "bsd_0.json"),
    ("map:f1", "map_f1.json"),
    ("map:finfty", "map_finfty.json"),
    ("map:f0", "map_f0.json"),
    ("homotopy:phiinfty", "homotopy_phiinfty.json"),
    ("homotopy:phi0", "homotopy_phi0.json"),
    ("homotopy:phi1", "homotopy_phi1.json"),
])
def test_show_json_matches_fixture_bytes(capsys, obj, golden):
    code, out, _ = run(capsys, "show", "--object", obj, "--format", "json")
    assert code == 0
    assert out == (GOLDEN_DIR / golden).read_text(encoding="utf-8")


def test_show_part(capsys):
    code, out, _ = run(capsys, "show", "--object", "map:finfty.0", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["table"] and all(e["part"] == "0" for e in doc["table"])


def test_show_text(capsys):
    code, out, _ = run(capsys, "show", "--object", "bsd:infty")
    assert code == 0 and "y1" in out and "->" in out
    code, out, _ = run(capsys, "show", "--object", "homotopy:phi1")
    assert code == 0 and "(zero)" in out


def test_gradings(capsys):
    code, out, _ = run(capsys, "gradings")
    assert code == 0 and "stabilizer" in out and "-A2 - A3" in out
    code, out, _ = run(capsys, "gradings", "--skein-reduced")
    lines = [ln.strip() for ln in out.splitlines() if ln.strip().startswith("(")]
    assert len(lines) == 19
    table = read_golden("grading_table.json")
    assert [int(ln.split(":")[1]) for ln in lines] == [r["skein"] for r in table]


@pytest.mark.parametrize("k", ["1", "infty", "0"])
def test_cone(capsys, k):
    code, out, _ = run(capsys, "cone", "--k", k)
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "cone", "--k", k, "--format", "json")
    doc = json.loads(out)
    assert doc["k"] == k and all(c["status"] == "pass" for c in doc["certificates"])


@pytest.mark.parametrize("which,lines", [
    ("6.1", ["ℤ ⊕ ℤ", "ℤ ⊕ ℤ ⊕ ℤ", "ℤ ⊕ ℤ", "ℤ"]),
    ("6.2", ["ℤ/2 ⊕ ℤ", "ℤ/18 ⊕ ℤ", "ℤ/12 ⊕ ℤ", "ℤ/6"]),
])
def test_examples(capsys, which, lines):
    code, out, _ = run(capsys, "examples", "--which", which)
    assert code == 0
    got = [ln.split(":", 1)[1].strip() for ln in out.splitlines()[1:]]
    assert got == lines


def test_missing_golden_dir(capsys, tmp_path):
    code, _, _ = run(capsys, "show", "--object", "bsd:1", "--golden-dir", str(tmp_path / "nope"))
    assert code == 1


def test_canonical_json_is_stable():
    doc = {"b": [1, {"z": 1, "a": 2}], "a": "ρ"}
    assert canonical_json(doc) == canonical_json(json.loads(canonical_json(doc)))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bsskein", "verify", "--only", "lattice"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.count("PASS") == 8
