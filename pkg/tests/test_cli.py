"""Tests for the command line front end."""

import csv
import json
import os
import subprocess
import sys

import pytest

from apcorr.cli import main

BASE_CONFIG = """\
x = 1000
h_max = 50
p_low = 5
p_high = 25
arc_q0 = 2
arc_q = 100
mc_samples = 20000
dirichlet_q = 12
u = 10.0
"""


@pytest.fixture()
def config_path(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(BASE_CONFIG)
    return str(path)


@pytest.fixture(autouse=True)
def isolated_cache_env(monkeypatch):
    monkeypatch.delenv("APC_CACHE_DIR", raising=False)


class TestSelftest:
    def test_all_checks_pass(self, capsys):
        rc = main(["selftest"])
        out = capsys.readouterr().out
        assert rc == 0
        lines = out.strip().splitlines()
        assert sum(1 for ln in lines if ln.startswith("PASS ")) == 8
        assert not any(ln.startswith("FAIL ") for ln in lines)
        assert lines[-1].startswith("selftest: 8/8 passed (backend=")


class TestSieve:
    def test_writes_summary_json(self, config_path, tmp_path, capsys):
        out_dir = str(tmp_path / "out")
        rc = main(["sieve", "--config", config_path, "--out", out_dir])
        assert rc == 0
        with open(os.path.join(out_dir, "sieve.json")) as fh:
            data = json.load(fh)
        assert data["x"] == 1000
        assert data["window_start"] == 950
        assert data["window_length"] == 1100
        assert data["prime_count"] > 0
        assert data["e2_count"] > 0
        assert data["backend"] in ("compiled", "pure")
        assert "sieve:" in capsys.readouterr().out


class TestCorrelate:
    def test_writes_correlation_csv(self, config_path, tmp_path, capsys):
        out_dir = str(tmp_path / "out")
        rc = main(["correlate", "--config", config_path, "--out", out_dir])
        assert rc == 0
        with open(os.path.join(out_dir, "correlation.csv"), newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 100
        assert [int(r["h"]) for r in rows] == [h for h in range(-50, 51) if h != 0]
        assert {r["parity"] for r in rows} == {"even", "odd"}
        assert "diagonal=" in capsys.readouterr().out


class TestPredict:
    def test_writes_prediction_csv(self, config_path, tmp_path):
        out_dir = str(tmp_path / "out")
        rc = main(["predict", "--config", config_path, "--out", out_dir])
        assert rc == 0
        with open(os.path.join(out_dir, "prediction.csv"), newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 100
        odd = [r for r in rows if r["parity"] == "odd"]
        assert all(float(r["predicted"]) == 0.0 for r in odd)

    def test_rejects_counts_only_models(self, config_path, tmp_path, capsys):
        cfg = tmp_path / "unweighted.cfg"
        cfg.write_text(BASE_CONFIG + "weighted = false\n")
        rc = main(["predict", "--config", str(cfg), "--out", str(tmp_path)])
        assert rc == 2
        err = capsys.readouterr().err
        assert err.startswith("error:")
        assert "compare" in err


class TestCompare:
    def test_writes_both_artifacts(self, config_path, tmp_path, capsys):
        out_dir = str(tmp_path / "out")
        rc = main(["compare", "--config", config_path, "--out", out_dir])
        assert rc == 0
        assert os.path.exists(os.path.join(out_dir, "comparison.csv"))
        assert os.path.exists(os.path.join(out_dir, "summary.json"))
        assert "median ratio" in capsys.readouterr().out


class TestArcs:
    def test_writes_arcs_json(self, config_path, tmp_path):
        out_dir = str(tmp_path / "out")
        rc = main(["arcs", "--config", config_path, "--out", out_dir])
        assert rc == 0
        with open(os.path.join(out_dir, "arcs.json")) as fh:
            data = json.load(fh)
        assert data["q0"] == 2
        assert data["qmax"] == 100
        assert data["measure"] == pytest.approx(0.03)
        assert data["abs_gap"] < 0.01

    def test_missing_arc_keys(self, tmp_path, capsys):
        cfg = tmp_path / "noarcs.cfg"
        cfg.write_text("x = 1000\nh_max = 50\np_low = 5\np_high = 25\n")
        rc = main(["arcs", "--config", str(cfg), "--out", str(tmp_path)])
        assert rc == 2
        assert "arc_q0" in capsys.readouterr().err


class TestDirichlet:
    def test_writes_dirichlet_json(self, config_path, tmp_path):
        out_dir = str(tmp_path / "out")
        rc = main(["dirichlet", "--config", config_path, "--out", out_dir])
        assert rc == 0
        with open(os.path.join(out_dir, "dirichlet.json")) as fh:
            data = json.load(fh)
        assert data["q"] == 12
        assert data["characters"] == 4
        assert data["row_orthogonality_error"] < 1e-10
        assert data["gauss_vs_mobius_error"] < 1e-10
        assert data["factorization_support_ok"] is True
        assert data["factorization_bound_ok"] is True
        assert data["factorization_residual"] < 1e-9


class TestErrorsAndFlags:
    def test_bad_config_exits_two(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("x = 10\nh_max = 50\np_low = 5\np_high = 25\n")
        rc = main(["sieve", "--config", str(cfg), "--out", str(tmp_path)])
        assert rc == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_missing_config_file_exits_two(self, tmp_path, capsys):
        rc = main(["sieve", "--config", str(tmp_path / "nope.cfg")])
        assert rc == 2
        assert "not found" in capsys.readouterr().err

    def test_bad_thread_count(self, config_path, tmp_path, capsys):
        rc = main(
            ["sieve", "--config", config_path, "--out", str(tmp_path), "--threads", "0"]
        )
        assert rc == 2
        assert "--threads" in capsys.readouterr().err

    def test_cache_flag_populates_directory(self, config_path, tmp_path):
        cache = tmp_path / "cachedir"
        rc = main(
            [
                "sieve",
                "--config",
                config_path,
                "--out",
                str(tmp_path / "out"),
                "--cache",
                str(cache),
            ]
        )
        assert rc == 0
        assert any(p.suffix == ".apc" for p in cache.iterdir())

    def test_cache_env_overrides_flag(self, config_path, tmp_path, monkeypatch):
        env_cache = tmp_path / "envcache"
        flag_cache = tmp_path / "flagcache"
        monkeypatch.setenv("APC_CACHE_DIR", str(env_cache))
        rc = main(
            [
                "sieve",
                "--config",
                config_path,
                "--out",
                str(tmp_path / "out"),
                "--cache",
                str(flag_cache),
            ]
        )
        assert rc == 0
        assert env_cache.exists()
        assert any(p.suffix == ".apc" for p in env_cache.iterdir())
        assert not flag_cache.exists()


class TestConsoleScript:
    def test_installed_entry_point(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "apcorr.cli", "selftest"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "selftest: 8/8 passed" in proc.stdout
