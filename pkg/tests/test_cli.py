import json

import pytest

from bolkit import catalog
from bolkit import suites as S
from bolkit.cli import main
from bolkit.lie_core import algebra_to_dict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_b1(capsys):
    code, out, _ = run(capsys, "verify", "B1")
    assert code == 0
    assert "jacobi" in out and "orthonormal" in out and "0 failed" in out


def test_classify_iso_psl2c_prints_admissible_branch(capsys):
    code, out, _ = run(capsys, "classify", "iso-psl2c", "--a", "1/2")
    assert code == 0
    assert "b=-1/2" in out.splitlines()


def test_classify_iso_semidirect(capsys):
    code, out, _ = run(capsys, "classify", "iso-semidirect", "--b3", "3/10", "--c3", "2/5", "--c2", "3")
    assert code == 0 and "d=1/2" in out


@pytest.mark.parametrize("value", ["0.5", "1.5/2", "1/0", "a"])
def test_exact_flags_reject_other_forms(capsys, value):
    code, _, err = run(capsys, "classify", "iso-psl2c", "--a", value)
    assert code == 2 and err


@pytest.mark.parametrize("argv", [
    ["verify", "no-such-id"],
    ["suite", "no-such-suite"],
    ["suite", "algebra-core", "--samples", "0"],
    ["suite", "algebra-core", "--tol", "-1"],
    ["suite", "algebra-core", "--tol", "1/2"],
    ["classify", "iso-psl2c"],
    ["classify", "lemma3", "--m", "m_5.2", "--h", "h_4.1"],
    ["verify", "m_a", "--param", "a=1/2", "--param", "a=1/4"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_failed_check_exits_1(capsys):
    code, out, _ = run(capsys, "classify", "lemma3", "--m", "m_5.2", "--h", "h2_sec5")
    assert code == 1 and "parabolic" in out


def test_out_file_round_trip(capsys, tmp_path):
    path = tmp_path / "r.jsonl"
    assert run(capsys, "suite", "algebra-core", "--out", str(path))[0] == 0
    assert run(capsys, "verify", "B4", "--out", str(path))[0] == 0
    lines = path.read_text().splitlines()
    n_core = len(S.run_suite("algebra-core", S.SuiteConfig()))
    assert len(lines) == n_core + 2
    first = json.loads(lines[0])
    assert set(first) == {"header", "report"} and "timestamp" in first["header"]
    assert {"context", "check", "samples", "seed", "max_residual", "tolerance", "pass",
            "paper_section"} <= set(first["report"])
    code, out, _ = run(capsys, "report", str(path))
    assert code == 0 and f"{len(lines)} reports, 0 failed" in out


def test_report_flags_failures_and_garbage(capsys, tmp_path):
    bad = tmp_path / "bad.jsonl"
    run(capsys, "classify", "lemma3", "--m", "m_5.2", "--h", "h2_sec5", "--out", str(bad))
    assert run(capsys, "report", str(bad))[0] == 1
    junk = tmp_path / "junk.jsonl"
    junk.write_text("not json\n")
    assert run(capsys, "report", str(junk))[0] == 2
    assert run(capsys, "report", str(tmp_path / "missing.jsonl"))[0] == 2


def test_same_seed_gives_identical_bodies(capsys, tmp_path):
    bodies = []
    for name in ("a", "b"):
        path = tmp_path / f"{name}.jsonl"
        run(capsys, "verify", "pseudo-euclidean", "--samples", "5", "--seed", "11", "--out", str(path))
        bodies.append([json.dumps(json.loads(x)["report"], sort_keys=True) for x in path.read_text().splitlines()])
    assert bodies[0] == bodies[1]
    assert json.loads(bodies[0][0])["seed"] == 11


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("BOLKIT_SEED", "7")
    code, out, _ = run(capsys, "verify", "L0", "--samples", "3", "--format", "json")
    assert code == 0
    assert all(json.loads(x)["seed"] == 7 for x in out.splitlines())
    monkeypatch.setenv("BOLKIT_SEED", "seven")
    assert run(capsys, "verify", "L0", "--samples", "3")[0] == 2


def test_json_format_is_one_object_per_line(capsys):
    code, out, _ = run(capsys, "verify", "m_a", "--param", "a=1/4", "--format", "json")
    assert code == 0
    (line,) = out.splitlines()
    assert json.loads(line)["pass"] is True


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "m_6.3" in out
    code, out, _ = run(capsys, "catalog", "list", "--json")
    ids = {row["id"] for row in json.loads(out)}
    assert {"B1", "h_sec7_f", "m_b3c3c2"} <= ids


def test_custom_catalog(capsys, tmp_path):
    rec = algebra_to_dict(catalog.get_algebra("B2"))
    rec["name"] = "B2copy"
    path = tmp_path / "custom.json"
    path.write_text(json.dumps({"algebras": [rec], "subspaces": [
        {"id": "mine", "algebra": "B2copy", "kind": "triple_system",
         "basis": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "0", "1"]]}]}))
    assert run(capsys, "verify", "B2copy", "--catalog", str(path))[0] == 0
    assert run(capsys, "verify", "mine", "--catalog", str(path))[0] == 0
    code, out, _ = run(capsys, "catalog", "list", "--catalog", str(path))
    assert "B2copy" in out
    broken = tmp_path / "broken.json"
    rec["brackets"] = {"0,1": ["0", "0", "1", "0"], "1,2": ["0", "1", "0", "0"], "0,2": ["1", "0", "0", "0"]}
    broken.write_text(json.dumps({"algebras": [rec]}))
    assert run(capsys, "verify", "B2copy", "--catalog", str(broken))[0] == 2


def test_classify_outcomes(capsys):
    code, out, _ = run(capsys, "classify", "compactness", "--family", "m_d", "--param", "d=1")
    assert code == 0 and "Killing value 0" in out
    code, out, _ = run(capsys, "classify", "angles", "--family", "m_a", "--param", "a=1/2")
    assert code == 0 and "1.33333" in out
    assert run(capsys, "classify", "scan", "--ansatz", "semidirect", "--samples", "20")[0] == 0
    assert run(capsys, "classify", "grading", "--m", "m_4.1", "--h", "h_4.1")[0] == 0


@pytest.mark.parametrize("suite", ["algebra-core", "obstructions"])
def test_fast_suites_pass(capsys, suite):
    assert run(capsys, "suite", suite)[0] == 0


def test_nonbol_verify_inverts_bol(capsys):
    code, out, _ = run(capsys, "verify", "nonbol", "--samples", "10")
    assert code == 0 and "fails (not a Bol loop)" in out
