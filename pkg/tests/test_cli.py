import csv
import io
import json
import math
import subprocess
import sys
import time

import pytest
from click.testing import CliRunner

from gammaseq.cli import cli, main


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args, env=None):
        return runner.invoke(cli, list(args), env=env, catch_exceptions=False)

    return go


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_eval(run):
    r = run("eval", "--x", "1", "--fields", "G")
    assert r.exit_code == 0
    (row,) = rows(r.stdout)
    assert row["field"] == "G" and abs(float(row["value"]) - 1) <= float(row["err"])
    r = run("eval", "--x", "2", "--fields", "G")
    assert float(rows(r.stdout)[0]["value"]) == pytest.approx(math.sqrt(2), abs=1e-12)
    r = run("eval", "--x", "10000", "--fields", "Gp")
    assert abs(float(rows(r.stdout)[0]["value"]) - 0.36788) < 1e-4


def test_eval_all_fields(run):
    r = run("eval", "--x", "3.5")
    assert r.exit_code == 0
    assert [row["field"] for row in rows(r.stdout)] == ["f", "fp", "fpp", "G", "Gp", "Gpp", "g", "h", "d", "A", "a", "R"]


@pytest.mark.parametrize(
    "args",
    [
        ("eval", "--x", "abc"),
        ("eval", "--x", "0"),
        ("eval", "--x", "-2"),
        ("eval", "--x", "1", "--fields", "Q"),
        ("seq", "C", "3", "2"),
        ("seq", "C", "0", "2"),
        ("seq", "nope", "1", "2"),
        ("na", "--a", "1"),
        ("na", "--a", "0.5"),
        ("na", "--a", "x"),
        ("verify", "nope"),
        ("verify", "euler", "--m-max", "0"),
        ("roots", "--tol", "0"),
        ("eval", "--x", "1", "--target-err", "-1"),
        ("bogus",),
    ],
)
def test_usage_errors(run, args):
    r = run(*args)
    assert r.exit_code == 2
    assert r.stdout == ""


def test_seq(run):
    out = rows(run("seq", "sigma", "1", "3").stdout)
    vals = [float(r["value"]) for r in out]
    assert vals[0] > vals[1] > vals[2]
    assert float(rows(run("seq", "D", "1", "1").stdout)[0]["value"]) == 1.0
    s1 = float(rows(run("seq", "S", "1", "1").stdout)[0]["value"])
    assert s1 == pytest.approx(math.e * (math.sqrt(2) - 1), abs=1e-14) and s1 < 1.15
    h = rows(run("seq", "harmonic", "1", "4").stdout)
    assert [int(r["n"]) for r in h] == [1, 2, 3, 4]


def test_roots(run):
    r = run("roots")
    assert r.exit_code == 0
    a, c = rows(r.stdout)
    assert 7.61316 < float(a["lo"]) < float(a["hi"]) < 7.61317
    assert 17.11650 < float(c["lo"]) < float(c["hi"]) < 17.11651
    r = run("roots", "--tol", "0.5")
    assert r.exit_code == 0
    a, c = rows(r.stdout)
    assert 7 < float(a["lo"]) and float(a["hi"]) < 8
    assert 17 < float(c["lo"]) and float(c["hi"]) < 18


def test_na(run):
    assert rows(run("na", "--a", "2").stdout)[0]["n_a"] == "4"
    assert rows(run("na", "--a", "1.4142135623730951").stdout)[0]["n_a"] == "2"
    assert rows(run("na", "--a", "1.4142135623730951", "--exact").stdout)[0]["n_a"] == "3"
    t = time.perf_counter()
    r = run("na", "--a", "1000000")
    assert time.perf_counter() - t < 1.0
    assert r.exit_code == 0 and int(rows(r.stdout)[0]["n_a"]) > 0


def test_verify_exit_codes(run):
    r = run("verify", "euler", "--m-max", "10000")
    assert r.exit_code == 0
    (row,) = rows(r.stdout)
    assert row["verdict"] == "pass" and row["n_failed"] == "0"
    assert run("verify", "monotone", "--n-max", "5000").exit_code == 0
    assert run("verify", "bounds").exit_code == 0
    assert run("verify", "limits").exit_code == 0


def test_verify_failure_and_inconclusive(run, monkeypatch):
    from gammaseq import analysis

    def failing(m_max, threads=1):
        rep = analysis.SuiteReport("euler", "x")
        rep.less(1, "bad", 2.0, 1.0)
        return rep

    def unsure(m_max, threads=1):
        rep = analysis.SuiteReport("euler", "x")
        rep.less(1, "tight", analysis.CertifiedValue(1.0, 1.0), 1.5)
        return rep

    monkeypatch.setattr(analysis, "verify_cor_euler", failing)
    r = run("verify", "euler")
    assert r.exit_code == 1 and "FAIL" in r.stderr
    monkeypatch.setattr(analysis, "verify_cor_euler", unsure)
    r = run("verify", "euler")
    assert r.exit_code == 3 and "INCONCLUSIVE" in r.stderr


def test_csv_json_agree(run):
    for args in (("eval", "--x", "7.25"), ("seq", "harmonic", "1", "5"), ("roots",), ("na", "--a", "3.3"), ("verify", "euler", "--m-max", "50")):
        c = rows(run(*args).stdout)
        j = json.loads(run(*args, "--format", "json").stdout)["records"]
        assert len(c) == len(j)
        for cr, jr in zip(c, j):
            assert list(cr) == list(jr)
            for k in cr:
                jv = jr[k]
                if isinstance(jv, bool):
                    assert cr[k] == ("true" if jv else "false")
                elif isinstance(jv, (int, float)):
                    assert float(cr[k]) == float(jv)
                else:
                    assert cr[k] == jv


def test_deterministic_and_lf(run):
    a = run("eval", "--x", "3").stdout_bytes
    b = run("eval", "--x", "3").stdout_bytes
    assert a == b and b"\r\n" not in a
    m = run("eval", "--x", "3", "--meta").stdout
    assert m.startswith("# version=")


def test_value_rendering(run):
    (row,) = rows(run("eval", "--x", "2", "--fields", "G").stdout)
    mant = row["value"].replace(".", "").lstrip("0")
    assert len(mant) <= 17
    assert float(row["value"]) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert len(row["err"].split("e")[0].replace(".", "")) <= 3


def test_config_precedence(run):
    env = {"GAMMASEQ_TARGET_ERR": "1e-3"}
    m = run("eval", "--x", "3", "--meta", env=env).stdout
    assert "# target_err=0.001" in m
    m = run("eval", "--x", "3", "--meta", "--target-err", "1e-9", env=env).stdout
    assert "# target_err=1e-09" in m
    r = run("eval", "--x", "3", env={"GAMMASEQ_MAX_TERMS": "zero"})
    assert r.exit_code == 2


def test_threads_flag(run):
    a = run("verify", "bounds", "--threads", "1").stdout
    b = run("verify", "bounds", "--threads", "4").stdout
    assert a == b


def test_main_entry(capsys):
    assert main(["na", "--a", "2"]) == 0
    assert "4" in capsys.readouterr().out
    assert main(["na", "--a", "0.9"]) == 2
    assert main(["--help"]) == 0


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "gammaseq.cli", "eval", "--x", "1", "--fields", "G"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("kind,x,field")
