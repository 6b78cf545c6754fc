import json
import subprocess
import sys


def run_cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "hopfgal.cli", *argv],
        capture_output=True,
        text=True,
    )


def test_enumerate_klein_four():
    result = run_cli("enumerate", "--p", "2", "--exp", "1,1")
    assert result.returncode == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["structure_count"] == 4
    assert payload["regular_subgroup_count"] == 4
    assert payload["counts_match"] is True


def test_enumerate_z4_contains_fixture_tensor():
    result = run_cli("enumerate", "--p", "2", "--exp", "2")
    payload = json.loads(result.stdout)
    assert payload["structure_count"] == 2
    assert {"spec": {"p": 2, "exponents": [2]}, "constants": [[[2]]]} in payload[
        "structures"
    ]


def test_enumerate_f3_line():
    result = run_cli("enumerate", "--p", "3", "--exp", "1")
    payload = json.loads(result.stdout)
    assert payload["structure_count"] == 1


def test_verify_lattice_all_structures():
    result = run_cli("verify", "lattice", "--p", "2", "--exp", "1,1", "--all-structures")
    assert result.returncode == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["status"] == "pass"
    assert payload["structures_checked"] == 4


def test_verify_primitive():
    result = run_cli("verify", "primitive", "--p", "5", "--n", "4")
    assert result.returncode == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["ideal_count"] == 5
    assert payload["single_chain"] is True


def test_verify_cyclic_all_d():
    result = run_cli("verify", "cyclic", "--p", "3", "--n", "3", "--all-d")
    assert result.returncode == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["d_count"] == 9
    assert all(r["strong_ftgt"] for r in payload["rows"])


def test_verify_conjugation_fixture():
    result = run_cli("verify", "conjugation", "--family", "fixture:klein", "--seed", "7")
    assert result.returncode == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["rows"][0]["pairs_checked"] == 16


def test_verify_elementary():
    result = run_cli("verify", "elementary", "--p", "3", "--n", "2")
    assert result.returncode == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["structures_scanned"] == 9


def test_report_fixture_table():
    result = run_cli("report", "--family", "fixture:klein", "--format", "table")
    assert result.returncode == 0, result.stderr
    assert "fixture:klein" in result.stdout
    line = next(l for l in result.stdout.splitlines() if l.startswith("fixture:klein"))
    assert " 3" in line and " 5" in line and "False" in line


def test_report_trivial_counts_equal():
    result = run_cli("report", "--family", "trivial", "--p", "3", "--exp", "2")
    payload = json.loads(result.stdout)
    row = payload["rows"][0]
    assert row["subhopf_count"] == row["subfield_count"]
    assert row["strong_ftgt"] is True


def test_report_primitive_uses_formula_at_scale():
    result = run_cli("report", "--family", "primitive", "--p", "5", "--n", "4")
    payload = json.loads(result.stdout)
    row = payload["rows"][0]
    assert row["subhopf_count"] == 5
    assert row["count_method"] == "formula"
    assert row["subfield_count"] == 1 + 156 + 806 + 156 + 1


def test_deterministic_output(tmp_path):
    a = run_cli("verify", "lattice", "--p", "2", "--exp", "2", "--all-structures", "--seed", "3")
    b = run_cli("verify", "lattice", "--p", "2", "--exp", "2", "--all-structures", "--seed", "3")
    assert a.stdout == b.stdout
    out = tmp_path / "report.json"
    c = run_cli("report", "--family", "fixture:klein", "--out", str(out))
    assert c.returncode == 0
    assert json.loads(out.read_text())["rows"][0]["subhopf_count"] == 3


def test_input_error_exit_code():
    assert run_cli("enumerate", "--p", "4", "--exp", "1").returncode == 2
    assert run_cli("enumerate", "--p", "2").returncode == 2
    assert run_cli("verify", "cyclic", "--p", "2", "--n", "2", "--all-d").returncode == 2


def test_cap_exceeded_exit_code():
    result = run_cli("enumerate", "--p", "2", "--exp", "1,1", "--cap-search", "2")
    assert result.returncode == 3
    assert "cap" in result.stderr
