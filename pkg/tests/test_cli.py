import json
import subprocess
import sys

import pytest

from orelab.cli import EXIT_ERROR, EXIT_FAILS, EXIT_HOLDS, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_holds_and_fails(capsys):
    assert run(capsys, "check", "z2xz2-swap", "reversible")[0] == EXIT_HOLDS
    code, out, _ = run(capsys, "check", "z2xz2-swap", "right-sigma-reversible")
    assert code == EXIT_FAILS
    assert "genuine violation" in out


def test_machine_output(capsys):
    code, out, _ = run(capsys, "check", "zmod4", "baer", "--format", "machine")
    doc = json.loads(out)
    assert code == EXIT_FAILS
    assert doc["verdict"]["status"] == "fails"
    assert doc["verdict"]["witness"]["annihilator"] == ["0", "2"]
    assert doc["replayed"] is True
    assert set(doc) >= {"schema_version", "target", "sigma", "delta", "timings"}


def test_fixture_flag(capsys):
    code, out, _ = run(capsys, "check", "--fixture", "z2-polynomials-skew-y", "poly-reversible",
                       "--candidate", "(1+x)*y;x", "--format", "machine")
    assert code == EXIT_FAILS
    assert json.loads(out)["verdict"]["mode"] == "witness"


def test_unknown_target_exits_2(capsys):
    code, _, err = run(capsys, "check", "no-such-ring", "reversible")
    assert code == EXIT_ERROR and "UnknownFixture" in err


def test_unknown_property_exits_2(capsys):
    code, _, err = run(capsys, "check", "z2", "shiny")
    assert code == EXIT_ERROR and "unknown property" in err


def test_bad_spec_file_reports_location(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ring": {"kind": "zmod", "params": {"n": 4}},
                               "morphisms": [{"name": "s", "kind": "table",
                                              "params": {"images": {"0": "0", "1": "1", "2": "3", "3": "3"}}}]}))
    code, _, err = run(capsys, "check", str(bad), "reversible")
    assert code == EXIT_ERROR
    assert "morphisms[0]" in err

    broken = tmp_path / "broken.json"
    broken.write_text('{"ring": {"kind": "zmod",\n  "params": }')
    code, _, err = run(capsys, "check", str(broken), "reversible")
    assert code == EXIT_ERROR and "line 2" in err


def test_annihilators_zmod4(capsys):
    code, out, _ = run(capsys, "annihilators", "zmod4", "--format", "machine")
    doc = json.loads(out)
    assert code == EXIT_HOLDS
    two = next(e for e in doc["point"] if e["of"] == ["2"])
    assert two["members"] == ["0", "2"] and not two["idempotent_generated"]
    assert doc["idempotents"] == ["0", "1"]


def test_idempotents_text(capsys):
    code, out, _ = run(capsys, "idempotents", "Z2xZ2")
    assert code == EXIT_HOLDS and "4 idempotents" in out


def test_multiply_routes_agree(capsys):
    code, out, _ = run(capsys, "multiply", "z2-polynomials-skew-y", "(1+x)*y", "x", "--format", "machine")
    doc = json.loads(out)
    assert code == EXIT_HOLDS and doc["routes_agree"] and doc["product"] == "0"


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--ring", "Z2xZ2", "--holds", "reversible",
                       "--fails", "sigma-reversible", "--dmax", "1")
    assert code == EXIT_HOLDS and "Z2xZ2|swap" in out


def test_verify_paper_fixtures_only(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify-paper", "--no-theorems", "--fixture", "z2xz2-swap",
                       "--output", str(out_file), "--no-timings")
    assert code == EXIT_HOLDS and "PASS" in out
    doc = json.loads(out_file.read_text())
    assert doc["ok"] and "timings" not in doc


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "orelab", "check", "z2", "reduced"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "holds" in proc.stdout
