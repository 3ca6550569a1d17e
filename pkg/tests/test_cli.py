import json
from fractions import Fraction

import jsonschema
import pytest

from voljump.cli import main
from voljump.reference import TABLE_ROWS, TABLE_TOLERANCE
from voljump.report import load_schema
from voljump.transform import composite_T


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dump_matrix_text(capsys):
    code, out, _ = run_cli(capsys, "dump-matrix")
    assert code == 0
    lines = [line for line in out.splitlines() if line.strip()]
    assert len(lines) == 11
    assert lines[0].split() == ["2", "0", "0", "0", "0", "0", "0", "0", "1", "1", "1"]


def test_dump_matrix_json(capsys):
    code, out, _ = run_cli(capsys, "dump-matrix", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert rows == [list(r) for r in composite_T().rows]


def test_charpoly_json(capsys):
    code, out, _ = run_cli(capsys, "charpoly", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["coefficients_ascending"]) == 12
    assert payload["cyclotomic_factors"] == [[1, 1]]
    assert payload["unit_root_multiplicity"] == 1
    assert payload["roots"]["outside_unit_circle"] == 1


def test_eigen_json_round_trips_fractions(capsys):
    code, out, _ = run_cli(capsys, "eigen", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    lam = payload["lambda"]
    lo, hi = Fraction(lam["lo"]), Fraction(lam["hi"])
    assert 1 < lo <= hi < 2
    assert len(payload["r"]) == len(payload["t"]) == 10


def test_eigen_text_digit_count(capsys):
    code, out, _ = run_cli(capsys, "eigen", "--tol-digits", "8")
    assert code == 0
    first = out.splitlines()[0]
    assert first.startswith("lambda = 1.")
    assert len(first.split(".")[-1]) == 8


def test_nef_table_markdown_contains_reference_rows(capsys):
    code, out, _ = run_cli(capsys, "nef-table")
    assert code == 0
    rows = {}
    for line in out.splitlines():
        cells = [c.strip() for c in line.strip().strip("|").split("|")]
        if len(cells) == 12 and cells[0].isdigit():
            key = (int(cells[0]), tuple(int(x) for x in cells[1:11]))
            rows[key] = Fraction(cells[11].replace(".", "")) / 1000
    for degree, mults, reference in TABLE_ROWS:
        assert (degree, mults) in rows
        assert abs(rows[(degree, mults)] - reference) <= TABLE_TOLERANCE


def test_nef_table_csv_is_crlf(capsys):
    code, out, _ = run_cli(capsys, "nef-table", "--format", "csv")
    assert code == 0
    assert "\r\n" in out
    header = out.split("\r\n", 1)[0]
    assert header == "d,a1,a2,a3,a4,a5,a6,a7,a8,a9,a10,margin_midpoint"


def test_enumerate_counts(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--d", "3")
    assert code == 0
    assert "# 25 candidates at degree 3" in out
    code, out, _ = run_cli(capsys, "enumerate", "--d", "3", "--extreme")
    assert "# 4 candidates at degree 3 (extreme only)" in out


def test_enumerate_rejects_bad_degree(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["enumerate", "--d", "9"])
    assert excinfo.value.code == 2


def test_orbit_text(capsys):
    code, out, _ = run_cli(capsys, "orbit", "--n", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("n=0")
    assert "C^2=-2" in lines[0]
    assert lines[-1] == "distinct: True"


def test_orbit_custom_requires_coeffs(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["orbit", "--seed", "custom"])
    assert excinfo.value.code == 2


def test_orbit_custom_seed(capsys):
    code, out, _ = run_cli(
        capsys,
        "orbit",
        "--seed",
        "custom",
        "--coeffs", "-3", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1",
        "--n", "2",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["distinct"] is False
    assert payload["collision"] == [0, 1]


def test_precision_floor_rejected(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "--precision-digits", "5"])
    assert excinfo.value.code == 2


def test_unknown_command_rejected(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["frobnicate"])
    assert excinfo.value.code == 2


def test_config_file_and_env(tmp_path, monkeypatch, capsys):
    config = tmp_path / "voljump.cfg"
    config.write_text("orbit-horizon = 7  # short orbit\n")
    monkeypatch.setenv("VOLJUMP_CONFIG", str(config))
    code, out, _ = run_cli(capsys, "orbit")
    assert code == 0
    data_lines = [line for line in out.splitlines() if line.startswith("n=")]
    assert len(data_lines) == 7
    monkeypatch.delenv("VOLJUMP_CONFIG")


def test_config_file_rejects_unknown_key(tmp_path, capsys):
    config = tmp_path / "bad.cfg"
    config.write_text("speed = fast\n")
    with pytest.raises(SystemExit) as excinfo:
        main(["orbit", "--config", str(config)])
    assert excinfo.value.code == 2


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "matrix.json"
    code, out, _ = run_cli(capsys, "dump-matrix", "--format", "json", "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text()) == [list(r) for r in composite_T().rows]


def test_nef_verify_passes(capsys):
    code, out, err = run_cli(capsys, "nef-verify")
    assert code == 0
    assert "verdict: pass" in out
    assert err == ""


def test_verify_passes(capsys):
    code, out, err = run_cli(capsys, "verify")
    assert code == 0
    assert "verdict: pass" in out
    assert err == ""
    assert all(line.startswith(("[PASS]", "verdict")) for line in out.splitlines())


def test_report_is_deterministic_and_valid(tmp_path, capsys):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert main(["report", "--out", str(first)]) == 0
    assert main(["report", "--out", str(second)]) == 0
    capsys.readouterr()
    assert first.read_bytes() == second.read_bytes()
    payload = json.loads(first.read_text())
    jsonschema.validate(payload, load_schema())
    assert payload["verdict"] == "pass"
    assert payload["nef"]["reference_rows"] == {"matched": 34, "total": 34}
    assert payload["nef"]["cutoff"] <= 7


def test_nef_verify_tol_flag(capsys):
    code, out, _ = run_cli(capsys, "nef-verify", "--tol", "30")
    assert code == 0
    assert "verdict: pass" in out


def test_precision_budget_maps_to_exit_3(monkeypatch, capsys):
    from voljump import cli
    from voljump.errors import PrecisionBudgetError

    def exhausted(args, cfg):
        raise PrecisionBudgetError("synthetic")

    monkeypatch.setitem(cli.COMMANDS, "charpoly", exhausted)
    code = cli.main(["charpoly"])
    captured = capsys.readouterr()
    assert code == 3
    assert "precision budget exhausted" in captured.err


def test_certification_failure_maps_to_exit_1(monkeypatch, capsys):
    from voljump import cli
    from voljump.errors import CertificationError

    def failing(args, cfg):
        raise CertificationError("synthetic")

    monkeypatch.setitem(cli.COMMANDS, "charpoly", failing)
    code = cli.main(["charpoly"])
    captured = capsys.readouterr()
    assert code == 1
    assert "certificate failure" in captured.err


def test_verify_reports_first_failure(monkeypatch, capsys):
    from voljump import cli
    from voljump.nefcheck import CheckResult

    class StubRun:
        certificates = (
            CheckResult("good", True),
            CheckResult("bad certificate", False, "synthetic"),
        )
        verdict = False

        def first_failure(self):
            return self.certificates[1]

    monkeypatch.setattr(cli, "run_verification", lambda cfg: StubRun())
    code = cli.main(["verify"])
    captured = capsys.readouterr()
    assert code == 1
    assert "failed: bad certificate" in captured.err
    assert "[FAIL] bad certificate" in captured.out
