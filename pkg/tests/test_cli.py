"""Command-line interface: subcommands, CSV round-trip, exit codes."""

import math

import pytest

from torusdet.cli import run
from torusdet.scans import CsvTable, GridSpec, parse_grid, scan_to_csv


def run_capture(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_theta3(capsys):
    code, out, err = run_capture(capsys, ["eval", "--fn", "theta3", "--x", "1", "--tol", "1e-13"])
    assert code == 0
    assert "1.086434811213308" in out


def test_eval_csv_round_trip(capsys):
    code, out, _ = run_capture(
        capsys, ["eval", "--fn", "eta", "--x", "1", "--format", "csv"]
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "value,error_bound,terms_used"
    value = float(lines[1].split(",")[0])
    assert abs(value**4 - 0.34830) < 5e-5


def test_det_both_routes(capsys):
    code, out, _ = run_capture(capsys, ["det", "--alpha", "1", "--route", "all"])
    assert code == 0
    assert out.count("0.34830") >= 2
    assert "eta" in out and "zeta" in out


def test_det_csv(capsys):
    code, out, _ = run_capture(
        capsys, ["det", "--alpha", "2", "--route", "eta", "--format", "csv"]
    )
    assert code == 0
    row = out.strip().splitlines()[1].split(",")
    assert abs(float(row[2]) - 0.24628598656412212) < 1e-10


def test_maximize(capsys):
    code, out, _ = run_capture(
        capsys, ["maximize", "--lo", "0.2", "--hi", "5", "--tol", "1e-10"]
    )
    assert code == 0
    assert "argmax = 1.0000000000" in out


def test_maximize_bad_interval_is_usage_error(capsys):
    code, _, err = run_capture(capsys, ["maximize", "--lo", "2", "--hi", "5"])
    assert code == 2
    assert "error" in err


def test_scan_csv_round_trip(capsys):
    code, out, _ = run_capture(
        capsys, ["scan", "--fn", "psi1", "--grid", "0.1:10:41"]
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,value,error_bound"
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    assert len(rows) == 41
    # serialization is shortest round-trip: parsing gives back the bits
    for line in lines[1:3]:
        for tok in line.split(","):
            assert repr(float(tok)) == tok
    # symmetric grid: psi1 column is reversal-invariant in log x
    values = [r[1] for r in rows]
    for a, b in zip(values, reversed(values)):
        assert abs(a - b) <= 1e-10


def test_scan_det_peaks_at_grid_point_nearest_one(capsys):
    code, out, _ = run_capture(
        capsys, ["scan", "--fn", "det", "--grid", "0.05:20:201"]
    )
    assert code == 0
    lines = out.strip().splitlines()[1:]
    rows = [[float(v) for v in line.split(",")] for line in lines]
    argmax = max(range(len(rows)), key=lambda i: rows[i][1])
    xs = [r[0] for r in rows]
    nearest_one = min(range(len(xs)), key=lambda i: abs(math.log(xs[i])))
    assert argmax == nearest_one


def test_scan_phi_components_cancel_at_one(capsys):
    total = 0.0
    for fn in ("phi2", "phi3", "phi4"):
        code, out, _ = run_capture(capsys, ["scan", "--fn", fn, "--grid", "1:2:2:lin"])
        assert code == 0
        first_row = out.strip().splitlines()[1].split(",")
        assert float(first_row[0]) == 1.0
        total += float(first_row[1])
    assert abs(total) <= 1e-11


def test_scan_unknown_curve(capsys):
    code, _, err = run_capture(capsys, ["scan", "--fn", "nope"])
    assert code == 2
    assert "unknown curve" in err


def test_bad_grid_spec(capsys):
    code, _, err = run_capture(capsys, ["scan", "--fn", "psi1", "--grid", "5:1:10"])
    assert code == 2


def test_identities_pass(capsys):
    code, out, _ = run_capture(
        capsys, ["identities", "--grid", "0.1:10:24"]
    )
    assert code == 0
    assert out.count("PASS") == 10


def test_certify_reports_envelope_errata(capsys):
    # the psi''/psi''' envelopes are false on parts of x > 1, so an honest
    # certificate run exits 1 and names exactly those two failures
    code, out, _ = run_capture(capsys, ["certify"])
    assert code == 1
    failing = {
        line.split()[1] for line in out.splitlines() if line.startswith("FAIL")
    }
    assert failing == {"psi_second_envelope", "psi_third_envelope"}
    assert "sensitivity_183_vs_184" in out
    assert out.count("PASS") >= 18


def test_usage_error_exit_codes(capsys):
    assert run([]) == 2
    assert run(["frobnicate"]) == 2
    code, out, _ = run_capture(capsys, ["--help"])
    assert code == 0


def test_csv_table_arity_check():
    table = CsvTable(header=("a", "b"), rows=((1.0,),))
    with pytest.raises(ValueError):
        table.to_csv()


def test_parse_grid():
    g = parse_grid("0.5:2:5:lin")
    assert g.spacing == "lin"
    assert g.points()[0] == 0.5 and g.points()[-1] == 2.0
    with pytest.raises(ValueError):
        parse_grid("1:2")
    with pytest.raises(ValueError):
        parse_grid("1:2:5:weird")


def test_scan_to_csv_direct():
    table = scan_to_csv("logderiv_theta3", GridSpec(0.9, 1.1, 3, "lin"))
    assert table.header == ("x", "value", "error_bound")
    mid = table.rows[1]
    assert abs(mid[0] - 1.0) < 1e-12
    assert abs(mid[1] - (-0.25)) < 1e-11
