import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from stanleydist.cli import main
from stanleydist.formats import moment_columns, parse_rational, rational_str, read_moments_csv


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(main, list(args))


def test_eval(runner):
    assert run(runner, "eval", "--perm", "2,1,3").output.strip() == "3"
    assert run(runner, "eval", "--perm", "1").output.strip() == "1"
    assert run(runner, "eval", "--perm", "1,3,2", "--convention", "ascent-first").output.strip() == "3"
    res = run(runner, "eval", "--perm", "2,2")
    assert res.exit_code == 2 and "not a permutation" in res.output
    assert run(runner, "eval", "--perm", "a,b").exit_code == 2


def test_dist(runner):
    doc = json.loads(run(runner, "dist", "--n", "4", "--format", "json").output)
    assert doc["counts"] == ["1", "7", "11", "5"]
    assert doc["schema_version"] == 1 and doc["kind"] == "DistributionTable"
    assert json.loads(run(runner, "dist", "--n", "1").output)["counts"] == ["1"]
    assert run(runner, "dist", "--n", "0").exit_code == 2
    assert run(runner, "dist", "--n", "400").exit_code == 2
    csv_out = run(runner, "dist", "--n", "3", "--format", "csv").output
    assert csv_out == "k,count\n1,1\n2,3\n3,2\n"


def test_moments_csv(runner, tmp_path):
    res = run(runner, "moments", "--n-range", "3:4:1", "--max-moment", "6")
    lines = res.output.splitlines()
    assert lines[0] == ",".join(moment_columns(6))
    assert lines[0].startswith("schema_version,n,mean,m_2")
    rows = read_moments_csv(iter(lines))
    assert rows[4]["mean"] == Fraction(17, 6) and rows[4]["m_2"] == Fraction(23, 36)
    assert rows[3]["m_2"] == Fraction(17, 36)
    assert "17/6" in lines[2] and "23/36" in lines[2]
    assert run(runner, "moments", "--n-range", "4:3:1").exit_code == 2
    assert run(runner, "moments", "--n-range", "nope").exit_code == 2


def test_moments_n1_has_empty_standardized_cells(runner):
    rows = read_moments_csv(iter(run(runner, "moments", "--n-range", "1:2:1", "--max-moment", "4").output.splitlines()))
    assert "alpha_4" not in rows[1] and rows[2]["alpha_2"] == 1


def test_round_trip_and_fit(runner, tmp_path, fit_moments):
    path = tmp_path / "m.csv"
    assert run(runner, "moments", "--n-range", "100:200:10", "--max-moment", "6", "--out", str(path)).exit_code == 0
    with open(path, encoding="utf-8") as fh:
        rows = read_moments_csv(fh)
    for n, mt in fit_moments.items():
        assert rows[n]["alpha_4"] == mt.std_even[4]
        assert rows[n]["q_5"] == mt.std_odd_q[5]
    res = run(runner, "fit", "--input", str(path), "--moment", "alpha_4")
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    ratio = next(c for c in doc["comparisons"] if c["label"].startswith("c_1/c_0"))
    assert float(ratio["paper"]) == pytest.approx(-11 / 14)
    assert float(ratio["fitted"]) == pytest.approx(-0.7857, abs=1e-4)
    assert float(ratio["rel_error"]) <= 1e-3
    odd = json.loads(run(runner, "fit", "--input", str(path), "--moment", "q_5").output)
    assert odd["series"]["prefactor_exponent"] == "-1/2"


def test_fit_synthetic_zero_residual(runner, tmp_path):
    path = tmp_path / "s.csv"
    rows = ["n,f"] + [f"{n},{rational_str(2 - Fraction(3, n) + Fraction(1, n**2))}" for n in range(10, 16)]
    path.write_text("\n".join(rows) + "\n")
    doc = json.loads(run(runner, "fit", "--input", str(path), "--moment", "f", "--orders", "2").output)
    assert Fraction(doc["series"]["max_residual"]) == 0
    assert doc["series"]["coefficients"] == ["2", "-3", "1"]
    assert doc["comparisons"] == []


def test_fit_missing_column(runner, tmp_path):
    path = tmp_path / "m.csv"
    run(runner, "moments", "--n-range", "10:14:1", "--max-moment", "4", "--out", str(path))
    res = run(runner, "fit", "--input", str(path), "--moment", "alpha_8")
    assert res.exit_code == 2 and "alpha_8" in res.output
    res = run(runner, "fit", "--input", str(path), "--moment", "alpha_4", "--orders", "9")
    assert res.exit_code == 2


def test_sample(runner):
    doc = json.loads(run(runner, "sample", "--n", "1", "--samples", "10", "--seed", "7").output)
    assert doc["counts"] == ["10"]
    a = run(runner, "sample", "--n", "8", "--samples", "5000", "--seed", "3").output
    b = run(runner, "sample", "--n", "8", "--samples", "5000", "--seed", "3").output
    assert a == b
    res = run(runner, "sample", "--n", "8", "--samples", "200000", "--seed", "1", "--compare-exact")
    assert json.loads(res.output)["tv_distance"] <= 0.01
    assert run(runner, "sample", "--n", "0", "--samples", "5", "--seed", "1").exit_code == 2


def test_out_dir_env(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("STANLEYDIST_OUT_DIR", str(tmp_path))
    assert run(runner, "dist", "--n", "3").exit_code == 0
    assert json.loads((tmp_path / "dist_3.json").read_text())["counts"] == ["1", "3", "2"]


def test_verify_small(runner, tmp_path):
    out = tmp_path / "report.json"
    res = run(runner, "verify", "--n-max", "3", "--eval-max-n", "5", "--samples", "20000", "--out", str(out))
    assert res.exit_code == 0, res.output
    doc = json.loads(out.read_text())
    var = next(r for r in doc["records"] if r["id"] == "variance-formula")
    assert var["status"] == "PASS" and "17/36" in var["observed"] and "83/180" in var["observed"]
    assert doc["exit_status"] == 0


def test_verify_injected_fault(runner):
    res = run(runner, "verify", "--n-max", "6", "--eval-max-n", "4", "--samples", "20000", "--inject-fault", "--format", "json")
    assert res.exit_code == 1
    doc = json.loads(res.output)
    assert any(r["status"] == "FAIL" for r in doc["records"])


def test_rational_strings():
    assert rational_str(Fraction(17, 6)) == "17/6"
    assert rational_str(1) == "1/1"
    assert parse_rational(" -10/69 ") == Fraction(-10, 69)
    with pytest.raises(ValueError):
        parse_rational("1/0")
