import csv
import io
import json
import subprocess
import sys

import pytest

from zsl import cli
from zsl.zerofind import ZeroCatalog


@pytest.fixture(scope="module")
def catalog_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "zeros.json"
    assert cli.main(["zeros", "--count", "30", "--out", str(path)]) == 0
    return path


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_zeros_file_round_trip(catalog_file):
    text = catalog_file.read_text()
    cat = ZeroCatalog.from_json(text)
    assert len(cat.zeros) == 30 and cat.certified
    assert cat.to_json() == text
    assert text.endswith("\n") and "\r" not in text


def test_pair_antisym(capsys, catalog_file):
    code, out, _ = run(capsys, "pair", "--form", "antisym", "--catalog", str(catalog_file),
                       "--fn", "loggauss:a=100,mu=0", "--fn", "j1(loggauss:a=100,mu=0.5)")
    assert code == 0
    rep = json.loads(out)
    assert rep["flags"] == ["antisymmetry self-check: pass"]
    assert rep["twist"] == 1 and rep["weight"] == 1
    assert rep["catalog_ref"] == "riemann:w=1:n=30:t_max=" + repr(ZeroCatalog.load(catalog_file).t_max)
    assert isinstance(rep["truncation_bound"], float)


def test_pair_same_result_from_reloaded_catalog(capsys, catalog_file, tmp_path):
    copy = tmp_path / "again.json"
    copy.write_text(ZeroCatalog.load(catalog_file).to_json())
    args = ["pair", "--form", "hermitian", "--fn", "loggauss:a=80,mu=0.1,amp=1+1j",
            "--fn", "scale:1.5(loggauss:a=80,mu=0)"]
    _, first, _ = run(capsys, *args, "--catalog", str(catalog_file))
    _, second, _ = run(capsys, *args, "--catalog", str(copy))
    assert first == second


def test_pair_sym_needs_weight_two(capsys, catalog_file):
    code, _, err = run(capsys, "pair", "--form", "sym", "--catalog", str(catalog_file),
                       "--fn", "loggauss:a=1", "--fn", "loggauss:a=2")
    assert code == 1 and "DomainError" in err


def test_gram_json_and_csv(capsys, catalog_file):
    code, out, _ = run(capsys, "gram", "--form", "hermitian", "--catalog", str(catalog_file))
    rep = json.loads(out)
    assert code == 0 and rep["rank"] == 5 and rep["positive_definite"]
    assert len(rep["matrix"]) == 5
    code, out, _ = run(capsys, "gram", "--form", "antisym", "--catalog", str(catalog_file),
                       "--format", "csv", "--fn", "loggauss:a=50,mu=0", "--fn", "j1(loggauss:a=50,mu=0)")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["fn", "loggauss:a=50,mu=0 re", "loggauss:a=50,mu=0 im",
                       "j1(loggauss:a=50,mu=0) re", "j1(loggauss:a=50,mu=0) im"]
    assert float(rows[1][1]) == 0.0 and float(rows[2][3]) == 0.0


def test_ff_command(capsys):
    code, out, _ = run(capsys, "ff", "--curve", "ell:q=2;a1=0,a2=0,a3=1,a4=0,a6=0")
    rep = json.loads(out)
    assert code == 0 and rep["P"] == [1, 0, 2] and rep["real_sqrt_q_mult"] == 0


def test_suspend_command(capsys):
    code, out, _ = run(capsys, "suspend", "--q", "4", "--alpha", "2:2", "--alpha", "-2", "--m", "3")
    rep = json.loads(out)
    assert code == 0
    assert rep["entries"][0]["s0"] == {"re": 0.5, "im": 0.0} and rep["entries"][0]["mult"] == 2
    assert rep["twist_check"]["passed"] and rep["twist_check"]["exact"]


def test_parse_alpha():
    from zsl.quadratic import Quad
    assert cli.parse_alpha("1+sqrt(-7)") == Quad(1, 1, -7)
    assert cli.parse_alpha("-3/2-2*sqrt(12)") == Quad(-1.5, -4, 3)
    assert cli.parse_alpha("1.5+2i") == complex(1.5, 2)


def test_ec_command(capsys):
    code, out, _ = run(capsys, "ec", "--curve", "11a1")
    rep = json.loads(out)
    assert code == 0 and rep["root_number"] == 1
    assert abs(rep["L_at_1"]["re"] - 0.253841860856) < 1e-11


@pytest.mark.parametrize("argv,token", [
    (["ff", "--curve", "ell:q=6;a1=0,a2=0,a3=1,a4=0,a6=0"], "6"),
    (["ec", "--curve", "ec:0,-1,1,-10,-20@N=11"], "ap:11"),
    (["suspend", "--q", "4", "--alpha", "2:x"], "x"),
    (["suspend", "--q", "12", "--alpha", "2"], "12"),
])
def test_parse_errors_exit_2(capsys, argv, token):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert f"(token: {token})" in err


def test_bad_dsl_exit_2(capsys, catalog_file):
    code, _, err = run(capsys, "pair", "--form", "antisym", "--catalog", str(catalog_file),
                       "--fn", "loggauss:a=1", "--fn", "j7(loggauss:a=1)")
    assert code == 2 and "j7" in err


def test_missing_catalog_exit_2(capsys, tmp_path):
    code, _, _ = run(capsys, "gram", "--form", "antisym", "--catalog", str(tmp_path / "none.json"))
    assert code == 2


def test_env_tolerance(monkeypatch, capsys, catalog_file):
    monkeypatch.setenv("ZSL_TOL", "nonsense")
    code, _, err = run(capsys, "gram", "--form", "hermitian", "--catalog", str(catalog_file))
    assert code == 2 and "ZSL_TOL" in err
    monkeypatch.setenv("ZSL_TOL", "1e-6")
    assert cli.default_tol() == 1e-6
    monkeypatch.delenv("ZSL_TOL")
    assert cli.default_tol() == cli.DEFAULT_TOL


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "2", "--only", "8")
    assert code == 0
    assert out.count("PASS") == 2 and "2/2 criteria passed" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "zsl", "suspend", "--q", "3", "--alpha", "1+sqrt(-2)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["q"] == 3
    proc = subprocess.run([sys.executable, "-m", "zsl", "ff", "--curve", "bogus"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
