import json
import subprocess
import sys

import pytest

from isotopy.cli import main, run


def _run(capsys, *argv):
    code, report = run(list(argv))
    out = capsys.readouterr()
    return code, report, out.out, out.err


def test_verify_identities(capsys):
    code, report, out, _ = _run(capsys, "verify-identities", "--algebra", "zorn(F3)", "--samples", "50")
    assert code == 0
    assert report["status"] == "pass"
    assert json.loads(out)["ring"] == "F3"


def test_same_seed_same_bytes(capsys):
    argv = ["triple", "--ring", "Q", "--seed", "7", "--emit-witness"]
    _, _, first, _ = _run(capsys, *argv)
    _, _, second, _ = _run(capsys, *argv)
    assert first == second
    _, _, other, _ = _run(capsys, "triple", "--ring", "Q", "--seed", "8", "--emit-witness")
    assert other != first


def test_isotope(capsys):
    code, report, _, _ = _run(capsys, "isotope", "--algebra", "zorn(Q)",
                              "--a", "2,1,0,0,0,0,0,0", "--b", "1,1,1,0,0,0,0,0", "--emit-witness")
    assert code == 0
    assert len(report["checks"]) == 1 + 10 + 2 + 2 + 1
    assert len(report["witness"]) == 8


def test_isotope_non_unit_parameter(capsys):
    code, report, _, err = _run(capsys, "isotope", "--algebra", "zorn(Z)",
                                "--a", "2,1,0,0,0,0,0,0", "--b", "1,1,0,0,0,0,0,0")
    assert code == 2 and report is None
    assert "NotInvertible" in err


def test_spin_modes(capsys, tmp_path):
    code, report, _, _ = _run(capsys, "spin", "--ring", "F3", "--from-vectors",
                              "1,1,0,0,0,0,0,0", "0,0,1,0,0,2,0,0", "--emit-witness")
    assert code == 0
    path = tmp_path / "u.json"
    path.write_text(json.dumps({"u": report["u"]}))
    code, report, _, _ = _run(capsys, "spin", "--ring", "F3", "--check", str(path))
    assert code == 0 and "triple" in report
    code, report, _, _ = _run(capsys, "spin", "--algebra", "cd(Q,-1,-1,-1)", "--roundtrip", "--samples", "5")
    assert code == 0


def test_spin_check_rejects_zero_matrix(capsys, tmp_path):
    path = tmp_path / "u.json"
    path.write_text(json.dumps([[0] * 16 for _ in range(16)]))
    code, report, _, _ = _run(capsys, "spin", "--ring", "Q", "--check", str(path))
    assert code == 1
    assert report["status"] == "fail"


def test_trivialize(capsys):
    code, report, _, _ = _run(capsys, "trivialize", "--ring", "F5", "--a", "2,3,0,0,0,0,0,0")
    assert code == 0
    assert report["witness"]["target"]["b"]
    code, report, _, _ = _run(capsys, "trivialize", "--ring", "Q", "--a", "2,1,0,0,0,0,0,0")
    assert code == 2


def test_trivialize_unknown_over_rings(capsys):
    code, report, _, _ = _run(capsys, "trivialize", "--ring", "Z", "--a", "0,0,1,0,0,-1,0,0")
    assert code == 0 and report["status"] == "pass"


def test_count_sphere_csv(capsys):
    code, _, out, _ = _run(capsys, "count-sphere", "--q", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "q,sphere_count,orbit_count,expected,match"
    assert lines[1] == "3,2160,,2160,True"


def test_orbit_with_target(capsys, tmp_path):
    out = tmp_path / "orbit.json"
    target = "1,1,1,0,0,0,0,0," + "0,0,1,0,0,1,0,0"
    code, report, stdout, _ = _run(capsys, "orbit", "--q", "2", "--target", target, "--emit-witness", "--out", str(out))
    assert code == 0 and stdout == ""
    data = json.loads(out.read_text())
    assert data["orbit_count"] == 14400
    assert data["witness"]["trace"]


def test_orbit_over_the_ceiling(capsys):
    code, _, _, err = _run(capsys, "orbit", "--q", "3")
    assert code == 2
    assert "ceiling" in err


def test_missing_algebra_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        run(["verify-identities"])
    assert info.value.code == 2


def test_entry_point():
    assert main(["count-sphere", "--q", "2", "--format", "csv"]) == 0
    proc = subprocess.run([sys.executable, "-m", "isotopy.cli", "count-sphere", "--q", "4"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["sphere_count"] == 16320
