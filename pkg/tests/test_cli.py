import csv
import io
import json

import pytest

from symstab.catalog import default_catalog_path
from symstab.cli import main
from symstab.report import CSV_COLUMNS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def sphere_catalog(tmp_path):
    doc = json.loads(default_catalog_path().read_text(encoding="utf-8"))
    doc = {"entries": [e for e in doc["entries"] if e["id"] == "S3"]}
    path = tmp_path / "s3.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert out.splitlines()[0].startswith("SU(3)")


def test_analyze_sphere_at_p2(capsys):
    code, out, _ = run(capsys, "analyze", "--space", "S3", "--p", "2")
    d = json.loads(out)
    assert code == 0
    assert d["verdict"] == "StableConformalDegenerate"
    assert d["Q_lambda1"] == 0.0
    for key in ("n", "s", "norm_sq_R", "lambda1", "lambda1_over_s", "s_sq_over_R_sq", "a", "b", "c", "saddle_witness"):
        assert key in d


def test_analyze_hyperbolic(capsys):
    code, out, _ = run(capsys, "analyze", "--space", "H3", "--p", "half-dim")
    assert code == 0
    assert json.loads(out)["verdict"] == "StableConformal"


def test_analyze_unknown_id_exits_2(capsys):
    code, _, err = run(capsys, "analyze", "--space", "G2")
    assert code == 2
    assert "unknown space" in err


def test_bad_p_exits_2(capsys):
    assert run(capsys, "analyze", "--space", "S3", "--p", "lots")[0] == 2


def test_empty_catalog_exits_2(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("", encoding="utf-8")
    assert run(capsys, "classify-all", "--catalog", str(path))[0] == 2


def test_single_entry_classify_all(capsys, sphere_catalog):
    code, out, _ = run(capsys, "classify-all", "--catalog", str(sphere_catalog), "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert len(rows) == 1
    assert rows[0]["id"] == "S3" and rows[0]["match"] == "true"


def test_csv_is_deterministic_with_lf(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["classify-all", "--format", "csv", "--out", str(a)])
    main(["classify-all", "--format", "csv", "--out", str(b)])
    capsys.readouterr()
    data = a.read_bytes()
    assert data == b.read_bytes()
    assert b"\r" not in data
    header = data.decode("utf-8").splitlines()[0].split(",")
    assert tuple(header) == CSV_COLUMNS


def test_csv_precision(capsys):
    _, out, _ = run(capsys, "classify-all", "--format", "csv")
    rows = {r["id"]: r for r in csv.DictReader(io.StringIO(out))}
    # 1/18 needs every digit to round-trip
    assert abs(float(rows["E6/F4"]["lambda1_over_s"]) - 1 / 18) < 1e-15
    assert len(rows["SU(4)"]["a"].replace(".", "")) >= 12


def test_classify_all_default_catalog_reports_mismatches(capsys):
    # the shipped expected verdicts include entries whose computed value of Q is positive
    code, out, err = run(capsys, "classify-all")
    doc = json.loads(out)
    assert code == 1
    assert "mismatches" in err
    assert doc["summary"]["total"] == len(doc["entries"])
    assert set(doc["summary"]["mismatches"]) == {"SU(3)", "SU(4)", "Sp(2)", "Spin(5)", "Spin(6)",
                                                  "Sp(2)/Sp(1)xSp(1)", "Sp(3)/Sp(2)xSp(1)"}
    assert all(e["provenance"] for e in doc["entries"])
    assert any("2/(n(n-1))" in note for note in doc["notes"])


def test_classify_all_shifted_policy_on_hyperbolic(capsys):
    code, out, _ = run(capsys, "classify-all", "--p", "half-dim+1")
    doc = json.loads(out)
    assert code == 0
    for e in doc["entries"]:
        if e["id"].startswith("H"):
            assert e["verdict"] == "StableConformal"


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--space", "S4", "--count", "3")
    assert code == 0
    assert out.split() == ["4", "10", "18"]
    assert run(capsys, "spectrum", "--space", "H3")[0] == 2


@pytest.mark.parametrize("suite", ["invariants", "sphere-oracle", "all"])
def test_verify_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite)
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().splitlines()[-1].endswith("checks passed")


def test_verify_failure_exits_1(capsys, monkeypatch):
    from symstab import cli
    from symstab.verify import Check

    monkeypatch.setattr(cli, "run_suite", lambda suite, catalog: [Check("x", 0.0, 1.0, 0.1, False)])
    assert run(capsys, "verify")[0] == 1


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "sphere-oracle", "--format", "json")
    checks = json.loads(out)["checks"]
    assert code == 0
    assert {"name", "expected", "observed", "tolerance", "passed"} <= set(checks[0])
