import csv
import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from mirec.cli import main
from mirec.exact import fmt
from mirec.suites import ConfigError, parse_rational

R_ARGS = ["--family", "R", "--params", "37/3,27/2,2/5,1/3"]
R_FIN = ["--family", "R", "--params", "27/2,2/5,1/3", "--N", "8"]
QR_FIN = ["--family", "qR", "--params", "1/16384,1/2,1/3", "--q", "1/2", "--N", "8"]


def run(argv, tmp_path, name="out"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, out.read_text() if out.exists() else ""


@pytest.mark.parametrize("text,value", [("3", F(3)), ("-7/2", F(-7, 2)), ("+1/3", F(1, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["2/4", "1/0", "0.5", "x", "1/-2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ConfigError):
        parse_rational(bad)


def test_gen_rows(tmp_path):
    code, text = run(["gen"] + R_ARGS + ["--D", "", "--nmax", "3"], tmp_path)
    assert code == 0
    data = json.loads(text)
    assert data["schema"] == "mirec/1"
    assert data["family"] == "R" and data["D"] == []
    assert [len(p["coeffs"]) for p in data["polynomials"]] == [1, 2, 3, 4]
    for p in data["polynomials"]:
        for c in p["coeffs"]:
            assert fmt(parse_rational(c)) == c


def test_gen_is_deterministic(tmp_path):
    argv = ["gen"] + R_ARGS + ["--D", "1,2", "--nmax", "3"]
    assert run(argv, tmp_path, "a")[1] == run(argv, tmp_path, "b")[1]


def test_gen_single_index_first_row_is_xi(tmp_path):
    from mirec.family import ParameterSet
    from mirec.multi import MultiIndexed
    code, text = run(["gen"] + R_ARGS + ["--D", "1", "--nmax", "0"], tmp_path)
    lam = ParameterSet.racah(*[parse_rational(v) for v in "37/3,27/2,2/5,1/3".split(",")])
    xi = MultiIndexed((1,), lam.shift(1)).xi_poly
    coeffs = [parse_rational(c) for c in json.loads(text)["polynomials"][0]["coeffs"]]
    assert coeffs == list(xi.dense())


def test_gen_csv_header(tmp_path):
    code, text = run(["gen"] + R_ARGS + ["--nmax", "1", "--format", "csv"], tmp_path)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["n", "power", "coeff"]
    assert len(rows) == 1 + 1 + 2


def test_verify_family_passes(tmp_path):
    argv = ["verify", "--family", "R", "--params", "27/2,2/5,1/3", "--N", "6", "--D", "1",
            "--suite", "family"]
    code, text = run(argv, tmp_path)
    data = json.loads(text)
    assert code == 0 and data["ok"] and data["schema"] == "mirec/1"


def test_verify_const_negative_control(tmp_path):
    code, text = run(["verify"] + R_ARGS + ["--D", "1", "--X", "0,1", "--suite", "const"], tmp_path)
    data = json.loads(text)
    assert code == 1 and not data["ok"]
    codes = [c["detail"].get("code") for r in data["reports"] for c in r["checks"]]
    assert "TheoremViolation" in codes


@pytest.mark.parametrize("base", [R_FIN, QR_FIN])
def test_verify_closure(tmp_path, base):
    code, text = run(["verify"] + base + ["--D", "1", "--suite", "closure"], tmp_path)
    assert code == 0 and json.loads(text)["ok"]


def test_verify_all_skips_incompatible(tmp_path):
    code, text = run(["verify"] + R_FIN + ["--D", "1", "--nmax", "2"], tmp_path)
    data = json.loads(text)
    assert code == 0
    assert "var" in data["skipped"]


def test_mode_mismatch_is_usage_error(tmp_path):
    assert main(["verify"] + R_FIN + ["--suite", "var"]) == 2
    assert main(["verify"] + R_ARGS + ["--suite", "closure"]) == 2


def test_bad_rational_is_usage_error():
    assert main(["gen", "--family", "R", "--params", "2/4,1,1,1"]) == 2


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nope"])
    assert info.value.code == 2


def test_config_file_with_overrides(tmp_path):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"family": "R", "params": "37/3,27/2,2/5,1/3", "D": "1",
                               "nmax": 5}))
    code, text = run(["gen", "--config", str(cfg), "--nmax", "1"], tmp_path)
    assert code == 0
    assert len(json.loads(text)["polynomials"]) == 2


def test_sweep_grid_and_advisory(tmp_path, monkeypatch):
    monkeypatch.setenv("MIREC_THREADS", "3")
    argv = ["sweep", "--family", "R", "--params", "27/2,2/5,1/3", "--N", "6", "--D", "1",
            "--suite", "family", "--grid", "c=1/3,2/5,3/7", "--grid", "d=1/3,1/2,20"]
    code, text = run(argv, tmp_path)
    data = json.loads(text)
    assert code == 0
    assert len(data["records"]) == 9
    assert data["counterexamples"] == 0
    statuses = [r["status"] for r in data["records"]]
    assert statuses.count("range-advisory") == 3
    assert "fail" not in statuses


def test_sweep_random_is_seeded(tmp_path):
    argv = ["sweep"] + R_ARGS + ["--D", "1", "--suite", "family", "--nmax", "2",
                                 "--random", "3", "--seed", "7", "--format", "csv"]
    a = run(argv, tmp_path, "a")[1].splitlines()
    b = run(argv, tmp_path, "b")[1].splitlines()
    strip = [line.rsplit(",", 1)[0] for line in a]
    assert strip == [line.rsplit(",", 1)[0] for line in b]
    assert a[0] == "instance,status,failures,wall_time_ns"


def test_bench_csv(tmp_path):
    code, text = run(["bench"] + R_ARGS + ["--D", "1", "--nmax", "3"], tmp_path)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0
    assert {r["method"] for r in rows} == {"determinant", "recurrence"}
    again = list(csv.DictReader(io.StringIO(run(["bench"] + R_ARGS + ["--D", "1", "--nmax", "3"],
                                                tmp_path, "b")[1])))
    assert [r["mult_count"] for r in rows] == [r["mult_count"] for r in again]


def test_bench_requires_indeterminate():
    assert main(["bench"] + R_FIN) == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "mirec", "gen"] + R_ARGS + ["--nmax", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["polynomials"][1]["n"] == 1
