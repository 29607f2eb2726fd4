"""End-to-end tests of the command-line interface.

Every report printed by a subcommand must validate against the packaged JSON
schema, reruns must be byte-identical, and the CSV ingest policy (index
columns, non-numeric columns, blank cells, decimal commas) must hold.
"""

import contextlib
import io
import json
from importlib import resources

import pytest
from jsonschema import Draft202012Validator

import tsecon
from tsecon.cli import main as cli_main

SCHEMA = json.loads((resources.files("tsecon") / "report_schema.json").read_text())
VALIDATOR = Draft202012Validator(SCHEMA)
Draft202012Validator.check_schema(SCHEMA)


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = cli_main([str(a) for a in argv])
    except SystemExit as exc:  # argparse usage errors and --version
        code = exc.code or 0
    return code, out.getvalue(), err.getvalue()


def run_report(*argv):
    code, out, err = run_cli(*argv)
    assert code == 0, err
    report = json.loads(out)
    problems = [e.message for e in VALIDATOR.iter_errors(report)]
    assert not problems, "\n".join(problems)
    return report


@pytest.fixture(scope="module")
def data(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli-data")
    paths = {
        "ar": root / "ar.csv",
        "pair": root / "pair.csv",
        "var": root / "var.csv",
        "rw": root / "rw.csv",
    }
    specs = [
        ("simulate", "--kind", "ar", "--T", "400", "--beta0", "1.0",
         "--betas", "0.6", "--seed", "42", "--out", paths["ar"]),
        ("simulate", "--kind", "cointegrated-pair", "--T", "400",
         "--theta", "2.0", "--seed", "43", "--out", paths["pair"]),
        ("simulate", "--kind", "var", "--T", "500", "--delta", "0.5,0.2",
         "--a-matrices", "[[[0.3, 0.8], [0.0, 0.5]]]",
         "--seed", "44", "--out", paths["var"]),
        ("simulate", "--kind", "random-walk", "--T", "300", "--seed", "45",
         "--out", paths["rw"]),
    ]
    for argv in specs:
        run_report(*argv)
    return paths


def test_every_subcommand_report_validates(data, tmp_path):
    battery = [
        ("describe", data["ar"]),
        ("describe", data["ar"], "--max-lag", "5", "--full-sample-mean"),
        ("fit-ar", data["ar"], "--p", "2"),
        ("select-lag", data["ar"], "--p-max", "4"),
        ("select-lag", data["var"], "--cols", "y1,y2", "--p-max", "3",
         "--criterion", "aic"),
        ("forecast", data["ar"], "--p", "1", "--horizon", "6"),
        ("adf", data["rw"], "--det", "drift"),
        ("chow", data["ar"], "--p", "1", "--tau", "200"),
        ("qlr", data["ar"], "--p", "1"),
        ("fit-var", data["var"], "--p", "1"),
        ("forecast-var", data["var"], "--p", "1", "--horizon", "4"),
        ("granger", data["var"], "--cause", "y2", "--effect", "y1", "--p", "1"),
        ("integration-order", data["rw"]),
        ("coint", data["pair"], "--y", "y", "--x", "x"),
        ("dols", data["pair"], "--y", "y", "--x", "x", "--p", "2"),
        ("simulate", "--kind", "white-noise", "--T", "50", "--seed", "1",
         "--out", tmp_path / "wn.csv"),
        ("mc-critical", "--statistic", "egadf", "--m", "1", "--T-sim", "50",
         "--reps", "1000", "--seed", "9"),
    ]
    for argv in battery:
        report = run_report(*argv)
        assert report["command"] == argv[0]
        assert report["format_version"] == 1
        assert report["toolkit_version"] == tsecon.__version__


def test_envelope_input_block(data):
    report = run_report("describe", data["ar"])
    blob = data["ar"].read_bytes()
    import hashlib

    assert report["input"]["sha256"] == hashlib.sha256(blob).hexdigest()
    assert report["input"]["path"] == str(data["ar"])
    assert report["input"]["columns_used"] == ["y"]
    assert report["input"]["parse"]["index_column"] == "t"
    assert report["argv"][0] == "describe"


def test_report_rerun_byte_identical(data):
    argv = ("adf", data["rw"], "--det", "drift", "--lags", "2")
    first = run_cli(*argv)
    second = run_cli(*argv)
    assert first == second
    argv = ("fit-var", data["var"], "--p", "1")
    assert run_cli(*argv) == run_cli(*argv)


def test_simulate_same_seed_same_bytes(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    base = ("simulate", "--kind", "ar", "--betas", "0.5", "--T", "100",
            "--seed", "7", "--out")
    rep1 = run_report(*base, out1)
    rep2 = run_report(*base, out2)
    assert out1.read_bytes() == out2.read_bytes()
    assert rep1["result"]["out_sha256"] == rep2["result"]["out_sha256"]
    rep3 = run_report("simulate", "--kind", "ar", "--betas", "0.5", "--T", "100",
                      "--seed", "8", "--out", tmp_path / "c.csv")
    assert rep3["result"]["out_sha256"] != rep1["result"]["out_sha256"]


def test_simulate_generates_and_echoes_seed(tmp_path):
    report = run_report("simulate", "--kind", "white-noise", "--T", "30",
                        "--out", tmp_path / "wn.csv")
    assert isinstance(report["seed"], int)
    assert "seed" not in report["result"]["spec"]


def test_simulate_roundtrip_recovers_ar_coefficients(tmp_path):
    out = tmp_path / "ar1.csv"
    run_report("simulate", "--kind", "ar", "--beta0", "1.0", "--betas", "0.6",
               "--T", "2000", "--seed", "100", "--out", out)
    report = run_report("fit-ar", out, "--p", "1")
    model = report["result"]["model"]
    assert abs(model["intercept"] - 1.0) < 0.3
    assert abs(model["lag_coefficients"][0] - 0.6) < 0.1
    assert model["stationarity"]["stationary"] is True


def test_granger_direction_on_causal_var(data):
    forward = run_report("granger", data["var"], "--cause", "y2",
                         "--effect", "y1", "--p", "1")
    reverse = run_report("granger", data["var"], "--cause", "y1",
                         "--effect", "y2", "--p", "1")
    assert forward["result"]["report"]["decision"]["5%"] == "reject"
    assert reverse["result"]["report"]["decision"]["5%"] == "fail_to_reject"


def test_integration_order_classifies_random_walk(data):
    report = run_report("integration-order", data["rw"])
    assert report["result"]["classification"] == "I(1)"
    assert len(report["result"]["reports"]) == 2


def test_coint_rejects_on_cointegrated_pair(data):
    report = run_report("coint", data["pair"], "--y", "y", "--x", "x")
    res = report["result"]
    assert abs(res["theta"]["x"] - 2.0) < 0.1
    assert res["report"]["decision"]["5%"] == "reject"
    assert res["report"]["cv_provenance"]["kind"] == "paper_table"


def test_emit_csv_files(data, tmp_path):
    fc_csv = tmp_path / "fc.csv"
    run_report("forecast", data["ar"], "--p", "1", "--horizon", "8",
               "--emit-csv", fc_csv)
    lines = fc_csv.read_text().strip().splitlines()
    assert lines[0] == "horizon,forecast"
    assert len(lines) == 9

    scan_csv = tmp_path / "scan.csv"
    report = run_report("qlr", data["ar"], "--p", "1", "--emit-csv", scan_csv)
    lines = scan_csv.read_text().strip().splitlines()
    assert lines[0] == "position,f_statistic"
    lo, hi = report["result"]["report"]["nuisance"]["window"]
    assert len(lines) - 1 == hi - lo + 1

    lag_csv = tmp_path / "lags.csv"
    run_report("describe", data["ar"], "--max-lag", "4", "--emit-csv", lag_csv)
    lines = lag_csv.read_text().strip().splitlines()
    assert lines[0] == "lag,autocovariance,autocorrelation"
    assert len(lines) == 6


def test_exit_code_domain_error(data):
    code, out, err = run_cli("describe", data["ar"], "--col", "nope")
    assert code == 1
    assert out == ""
    assert "nope" in err

    code, _, err = run_cli("describe", "/no/such/file.csv")
    assert code == 1
    assert "cannot read" in err


def test_exit_code_usage_error(data):
    code, _, _ = run_cli("adf", data["rw"], "--det", "quadratic")
    assert code == 2
    code, _, _ = run_cli()
    assert code == 2


def test_version_flag():
    code, out, _ = run_cli("--version")
    assert code == 0
    assert tsecon.__version__ in out


# --- ingest policy -------------------------------------------------------------


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_ingest_index_column_note(tmp_path):
    f = _write(tmp_path / "d.csv", "t,y\n0,1.5\n1,2.5\n2,3.5\n3,4.5\n")
    report = run_report("describe", f, "--max-lag", "1")
    parse = report["input"]["parse"]
    assert parse["index_column"] == "t"
    assert any("index" in note for note in parse["notes"])
    assert report["result"]["series"] == "y"


def test_ingest_non_numeric_column_ignored_with_note(tmp_path):
    f = _write(tmp_path / "d.csv",
               "y,label\n1.0,north\n2.0,south\n3.0,east\n4.0,west\n")
    report = run_report("describe", f, "--max-lag", "1")
    notes = report["input"]["parse"]["notes"]
    assert any("'label' ignored" in n and "'north'" in n for n in notes)
    assert report["result"]["series"] == "y"
    assert report["result"]["n_obs"] == 4


def test_ingest_blank_cells_rejected_with_line_numbers(tmp_path):
    f = _write(tmp_path / "d.csv", "y\n1.0\n\n3.0\n\n5.0\n")
    code, _, err = run_cli("describe", f)
    assert code == 1
    assert "'y' has blank cells at lines 3, 5" in err


def test_ingest_decimal_comma(tmp_path):
    f = _write(tmp_path / "d.csv", "t;y\n1;3,14\n2;2,0\n3;1,5\n4;0,25\n")
    report = run_report("describe", f, "--decimal-comma", "--max-lag", "1")
    expected = (3.14 + 2.0 + 1.5 + 0.25) / 4
    assert report["result"]["mean"] == pytest.approx(expected, abs=1e-12)


def test_ingest_rejects_ragged_rows(tmp_path):
    f = _write(tmp_path / "d.csv", "y\n1.0\n2.0,9.9\n3.0\n")
    code, _, err = run_cli("describe", f)
    assert code == 1
    assert "not rectangular" in err and "line 3" in err


def test_ingest_rejects_no_usable_columns(tmp_path):
    f = _write(tmp_path / "d.csv", "a,b\nx,y\nz,w\n")
    code, _, err = run_cli("describe", f)
    assert code == 1
    assert "no usable numeric columns" in err


def test_ingest_rejects_empty_and_headerless(tmp_path):
    f = _write(tmp_path / "empty.csv", "")
    code, _, err = run_cli("describe", f)
    assert code == 1 and "empty" in err
    f = _write(tmp_path / "hdr.csv", "y\n")
    code, _, err = run_cli("describe", f)
    assert code == 1 and "no data" in err


def test_ingest_rejects_duplicate_and_blank_headers(tmp_path):
    f = _write(tmp_path / "dup.csv", "y,y\n1,2\n3,4\n")
    code, _, err = run_cli("describe", f)
    assert code == 1 and "duplicate column name 'y'" in err
    f = _write(tmp_path / "blank.csv", "y,\n1,2\n3,4\n")
    code, _, err = run_cli("describe", f)
    assert code == 1 and "empty header name" in err


# --- critical-value files ------------------------------------------------------


def test_cv_file_flag_and_environment(data, tmp_path, monkeypatch):
    monkeypatch.delenv("TSECON_CV_FILE", raising=False)
    # trend with fixed lags=1 is deliberately absent from the packaged cache
    code, _, err = run_cli("adf", data["rw"], "--det", "trend", "--lags", "1")
    assert code == 1
    assert "no cached critical values" in err

    cv_file = tmp_path / "cv.json"
    report = run_report("mc-critical", "--statistic", "adf", "--det", "trend",
                        "--lags", "1", "--T-sim", "100", "--reps", "2000",
                        "--seed", "31", "--out", cv_file)
    assert report["result"]["written_to"] == str(cv_file)

    flagged = run_report("adf", data["rw"], "--det", "trend", "--lags", "1",
                         "--cv-file", cv_file)
    prov = flagged["result"]["report"]["cv_provenance"]
    assert prov["kind"] == "monte_carlo"
    assert prov["reps"] == 2000

    monkeypatch.setenv("TSECON_CV_FILE", str(cv_file))
    via_env = run_report("adf", data["rw"], "--det", "trend", "--lags", "1")
    assert via_env["result"]["report"]["statistic"] == \
        flagged["result"]["report"]["statistic"]
    assert via_env["result"]["report"]["critical_values"] == \
        flagged["result"]["report"]["critical_values"]


def test_mc_critical_out_merges_entries(tmp_path):
    cv_file = tmp_path / "cv.json"
    run_report("mc-critical", "--statistic", "egadf", "--m", "1",
               "--T-sim", "50", "--reps", "1000", "--seed", "5", "--out", cv_file)
    run_report("mc-critical", "--statistic", "egadf", "--m", "2",
               "--T-sim", "50", "--reps", "1000", "--seed", "6", "--out", cv_file)
    saved = json.loads(cv_file.read_text())
    assert len(saved["entries"]) == 2
    ms = sorted(e["params"]["n_regressors"] for e in saved["entries"])
    assert ms == [1, 2]


def test_mc_critical_report_quantiles_ordered():
    report = run_report("mc-critical", "--statistic", "qlr", "--p", "1",
                        "--T-sim", "80", "--reps", "1000", "--seed", "3")
    q = report["result"]["quantiles"]
    # right tail: stricter level, larger critical value
    assert q["0.01"] > q["0.05"] > q["0.1"]
