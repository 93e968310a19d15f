import json
import subprocess
import sys

import pytest

from perm132.cli import read_config, run, UsageError


def out_of(capsys, argv, code=0):
    assert run(argv) == code
    return capsys.readouterr()


def test_expect_213(capsys):
    out = out_of(capsys, ["expect", "213"]).out
    assert "1/8 d^-4 - 1/8 d^-3 - 1/8 d^-2 + 1/8 d^-1" in out
    assert "A = sqrt(pi)/8 * n^{5/2}" in out
    assert "0.2215567" in out


def test_expect_gf(capsys):
    out = out_of(capsys, ["expect", "12", "--gf", "5"]).out
    assert "4, 37, 37/14" in out


def test_expect_json(capsys):
    d = json.loads(out_of(capsys, ["expect", "321", "--json", "--gf", "4"]).out)
    assert d["A"] == "1/6" and d["n_exponent"] == "3"
    assert d["ed"] == {"-5": "1/8", "-4": "-1/8", "-3": "-1/8", "-2": "1/8"}


def test_moment(capsys):
    out = out_of(capsys, ["moment", "12^2"]).out
    assert "E Λ² = 5/6" in out
    out = out_of(capsys, ["moment", "213*231", "--n", "5"]).out
    assert "E Λ_213 Λ_231 = 1/20" in out and "n=5: 7/3" in out


def test_exact_variances_differ(capsys):
    a = out_of(capsys, ["exact", "--n", "5", "--pattern", "213", "--stat", "var", "--csv"]).out.splitlines()
    b = out_of(capsys, ["exact", "--n", "5", "--pattern", "231", "--stat", "var", "--csv"]).out.splitlines()
    assert a[0] == b[0] == "n,pattern,mean,var"
    assert a[1] == "5,213,27/14,2279/588"
    assert b[1] == "5,231,27/14,2195/588"


def test_exact_range_and_dist(capsys):
    lines = out_of(capsys, ["exact", "--n", "1-3", "--pattern", "12", "--stat", "dist", "--csv"]).out.splitlines()
    assert lines[0] == "n,pattern,mean,dist"
    assert lines[2] == "2,12,1/2,0:1;1:1"


def test_exact_cap(capsys, tmp_path):
    err = out_of(capsys, ["exact", "--n", "13", "--pattern", "12"], code=2).err
    assert "cap" in err
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# raise the cap\ncap = 13\n")
    assert run(["exact", "--n", "13", "--pattern", "1", "--config", str(cfg)]) == 0
    assert "mean=13" in capsys.readouterr().out
    assert run(["exact", "--n", "13", "--pattern", "1", "--config", str(cfg), "--cap", "12"]) == 2


def test_gf(capsys):
    lines = out_of(capsys, ["gf", "1", "--order", "4"]).out.splitlines()
    assert lines == ["n,coefficient,mean", "0,0,0", "1,1,1", "2,4,2", "3,15,3"]


def test_sample_json_file(capsys, tmp_path):
    path = tmp_path / "stats.json"
    run(["sample", "--n", "200", "--reps", "50", "--patterns", "12,213", "--seed", "42", "--out", str(path)])
    d = json.loads(path.read_text())
    assert d["n"] == 200 and d["reps"] == 50 and d["seed"] == 42
    assert set(d["per_pattern"]) == {"12", "213"}
    run(["sample", "--n", "200", "--reps", "50", "--patterns", "12,213", "--seed", "42", "--out", str(path), "--threads", "3"])
    assert json.loads(path.read_text()) == d


def test_excursion(capsys, tmp_path):
    path = tmp_path / "psi.json"
    assert run(["excursion", "--m", "200", "--reps", "20", "--patterns", "12,213", "--seed", "7", "--out", str(path)]) == 0
    assert set(json.loads(path.read_text())["per_pattern"]) == {"12", "213"}
    assert run(["excursion", "--m", "200", "--reps", "20", "--patterns", "4213"]) == 2


def test_table(capsys):
    out = out_of(capsys, ["table"]).out
    assert "(10-3*pi)/12" in out and "(344-105*pi)/6720" in out and "13/60" in out
    assert "49   42   42" in out
    d = json.loads(out_of(capsys, ["table", "--json"]).out)
    assert d["second_moments_213_231_312_times_840"][1] == ["42", "43", "41"]
    csv_lines = out_of(capsys, ["table", "--csv"]).out.splitlines()
    assert csv_lines[0].startswith("quantity,mean")


def test_verify(capsys):
    out = out_of(capsys, ["verify"]).out
    assert "FAIL" not in out and out.count("ok") >= 8
    first = out_of(capsys, ["verify", "--json"]).out
    assert json.loads(first)["ok"] is True
    assert out_of(capsys, ["verify", "--json"]).out == first


def test_verify_failure_exits_1(capsys, monkeypatch):
    from perm132 import oracles

    monkeypatch.setattr(oracles, "SUITE", (lambda: oracles.Check("broken", False, "x"),))
    assert run(["verify"]) == 1


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["bogus"]) == 2
    assert run(["expect", "132"]) == 2
    assert run(["expect", "1a"]) == 2
    assert run(["moment", "12^^2"]) == 2
    assert run(["exact", "--n", "3", "--pattern", "12", "--stat", "kurtosis"]) == 2
    assert run(["sample", "--n", "10", "--patterns", ","]) == 2


def test_assertion_exit_code(capsys, monkeypatch):
    from perm132 import cli

    def boom(sigma):
        raise AssertionError("degree mismatch")

    monkeypatch.setattr(cli, "ed_expectation", boom)
    assert run(["expect", "12"]) == 1


def test_config_parsing(tmp_path):
    p = tmp_path / "x.cfg"
    p.write_text("seed=5\nthreads = 2  # comment\n")
    assert read_config(p) == {"seed": 5, "threads": 2}
    p.write_text("colour=blue\n")
    with pytest.raises(UsageError):
        read_config(p)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "perm132", "moment", "12^2"], capture_output=True, text=True)
    assert r.returncode == 0 and "E Λ² = 5/6" in r.stdout
