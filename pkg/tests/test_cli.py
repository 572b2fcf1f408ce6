"""Command-line interface: config layering, CSV output, exit codes."""

import math
from pathlib import Path

import pytest
from mpmath import mpf

from dunkldyn.cli import (
    EXIT_CONFIG,
    EXIT_INFEASIBLE,
    EXIT_OK,
    EXIT_VERIFY,
    PRECISION_ENV_VAR,
    ConfigError,
    ExperimentConfig,
    load_config,
    main,
    read_config_file,
    run,
)
from dunkldyn.series import TruncatedSeries, read_series, write_series


def _read_csv(path):
    lines = Path(path).read_text().splitlines()
    return lines[0], lines[1], [ln.split(",") for ln in lines[2:]]


class TestConfig:
    def test_defaults_validate(self):
        ExperimentConfig().validate()

    def test_alpha_domain(self):
        with pytest.raises(ConfigError) as exc:
            ExperimentConfig(alpha="-0.75").validate()
        assert "alpha" in str(exc.value)

    def test_p_inf_accepted(self):
        cfg = ExperimentConfig(p="inf")
        cfg.validate()
        assert cfg.p_mp() == mpf("inf")

    def test_p_below_one_rejected(self):
        with pytest.raises(ConfigError):
            ExperimentConfig(p="0.5").validate()

    def test_read_config_file(self, tmp_path):
        path = tmp_path / "c.cfg"
        path.write_text("alpha = 1  # with a comment\n\ntrunc_degree=512\n")
        assert read_config_file(str(path)) == {"alpha": "1", "trunc_degree": 512}

    def test_unknown_key_carries_line(self, tmp_path):
        path = tmp_path / "c.cfg"
        path.write_text("alpha=1\nbogus=2\n")
        with pytest.raises(ConfigError) as exc:
            read_config_file(str(path))
        assert "line 2" in str(exc.value)
        assert "bogus" in str(exc.value)

    def test_bad_integer_carries_line(self, tmp_path):
        path = tmp_path / "c.cfg"
        path.write_text("precision_bits=many\n")
        with pytest.raises(ConfigError) as exc:
            read_config_file(str(path))
        assert "line 1" in str(exc.value)

    def test_missing_equals_rejected(self, tmp_path):
        path = tmp_path / "c.cfg"
        path.write_text("alpha 1\n")
        with pytest.raises(ConfigError):
            read_config_file(str(path))

    def test_flags_beat_file(self, tmp_path):
        path = tmp_path / "c.cfg"
        path.write_text("alpha=1\nseed=7\n")
        cfg = load_config(str(path), {"alpha": "0.5"})
        assert cfg.alpha == "0.5"
        assert cfg.seed == 7

    def test_env_sets_precision(self, monkeypatch):
        monkeypatch.setenv(PRECISION_ENV_VAR, "192")
        assert load_config(None, {}).precision_bits == 192

    def test_flag_beats_env(self, monkeypatch):
        monkeypatch.setenv(PRECISION_ENV_VAR, "192")
        assert load_config(None, {"precision_bits": 128}).precision_bits == 128

    def test_env_must_be_integer(self, monkeypatch):
        monkeypatch.setenv(PRECISION_ENV_VAR, "lots")
        with pytest.raises(ConfigError):
            load_config(None, {})


class TestWeightsCommand:
    def test_golden_table(self, tmp_path):
        out = tmp_path / "w.csv"
        assert main(["weights", "--n", "4", "-o", str(out)]) == EXIT_OK
        banner, header, rows = _read_csv(out)
        assert header == "n,d_n,log_d_n"
        got = [(int(r[0]), float(r[1])) for r in rows]
        assert got == [(0, 1.0), (1, 2.0), (2, 4.0), (3, 16.0), (4, 64.0)]
        assert abs(float(rows[3][2]) - math.log(16)) < 1e-12

    def test_banner_shape(self, tmp_path):
        out = tmp_path / "w.csv"
        main(["weights", "--n", "2", "-o", str(out)])
        banner, _, _ = _read_csv(out)
        assert banner.startswith("# config: ")
        keys = [item.split("=")[0] for item in banner[len("# config: "):].split()]
        assert keys == sorted(keys)
        assert "alpha" in keys and "output" in keys and "n" in keys

    def test_deterministic_bytes(self, tmp_path):
        out = tmp_path / "w.csv"
        main(["weights", "--n", "32", "--alpha", "0.5", "-o", str(out)])
        first = out.read_bytes()
        main(["weights", "--n", "32", "--alpha", "0.5", "-o", str(out)])
        assert out.read_bytes() == first

    def test_config_file_alpha(self, tmp_path):
        path = tmp_path / "c.cfg"
        path.write_text("alpha=0.5\n")
        out = tmp_path / "w.csv"
        assert main(["weights", "--config", str(path), "--n", "2",
                     "-o", str(out)]) == EXIT_OK
        _, _, rows = _read_csv(out)
        assert [float(r[1]) for r in rows] == [1.0, 3.0, 6.0]

    def test_n_out_of_range(self, tmp_path):
        out = tmp_path / "w.csv"
        assert main(["weights", "--n", "-3", "-o", str(out)]) == EXIT_CONFIG


class TestSeriesCommands:
    def _write_input(self, tmp_path, coeffs, alpha="0"):
        f = TruncatedSeries({n: mpf(c) for n, c in coeffs.items()}, trunc_degree=16)
        path = tmp_path / "in.series"
        write_series(f, str(path), mpf(alpha), precision_bits=256)
        return str(path)

    def test_apply_one_step(self, tmp_path):
        inp = self._write_input(tmp_path, {2: 1})
        out = tmp_path / "a.csv"
        assert main(["apply", "--input", inp, "--k", "1", "-o", str(out)]) == EXIT_OK
        _, header, rows = _read_csv(out)
        assert header == "n,re_c_n,im_c_n"
        assert [(int(r[0]), float(r[1]), float(r[2])) for r in rows] == [(1, 2.0, 0.0)]
        g, alpha, _ = read_series(str(tmp_path / "a.series"))
        assert alpha == 0
        assert abs(g.coeff(1) - 2) < mpf("1e-70")

    def test_means_quadratic(self, tmp_path):
        inp = self._write_input(tmp_path, {2: 1})
        out = tmp_path / "m.csv"
        rc = main(["means", "--input", inp, "-o", str(out),
                   "--r-min", "0.5", "--r-max", "2", "--r-points", "4"])
        assert rc == EXIT_OK
        _, header, rows = _read_csv(out)
        assert header == "r,M_p,richardson_err"
        for r_s, m_s, _ in rows:
            assert abs(float(m_s) - float(r_s) ** 2) < 1e-12

    def test_missing_input_is_config_error(self, tmp_path):
        out = tmp_path / "a.csv"
        rc = main(["apply", "--input", str(tmp_path / "nope.series"),
                   "-o", str(out)])
        assert rc == EXIT_CONFIG


class TestVerifyCommands:
    def test_lemma1_band(self, tmp_path):
        out = tmp_path / "l1.csv"
        rc = main(["verify-lemma1", "--n", "1200", "-o", str(out)])
        assert rc == EXIT_OK
        _, header, rows = _read_csv(out)
        assert header == "n,ratio,reciprocal"
        assert len(rows) == 1201

    def test_lemma3_grid(self, tmp_path):
        out = tmp_path / "l3.csv"
        rc = main(["verify-lemma3", "--q", "1.5", "-o", str(out),
                   "--r-min", "0.5", "--r-max", "50", "--r-points", "6",
                   "--trunc-degree", "256"])
        assert rc == EXIT_OK
        _, header, rows = _read_csv(out)
        assert header == "r,ratio"
        assert all(float(r[1]) >= 0 for r in rows)

    def test_hy_margins(self, tmp_path):
        out = tmp_path / "hy.csv"
        rc = main(["verify-hy", "--count", "5", "--max-degree", "16",
                   "--p", "1.5", "-o", str(out)])
        assert rc == EXIT_OK
        _, header, rows = _read_csv(out)
        assert header == "poly,r,lhs,rhs,margin"
        assert len(rows) == 15

    def test_barnes_ratio(self, tmp_path):
        out = tmp_path / "b.csv"
        rc = main(["verify-barnes", "-o", str(out),
                   "--r-min", "10000", "--r-max", "20000", "--r-points", "2"])
        assert rc == EXIT_OK
        _, _, rows = _read_csv(out)
        for r in rows:
            assert 0.95 <= float(r[3]) <= 1.05


@pytest.fixture(scope="module")
def hc_artifacts(tmp_path_factory):
    base = tmp_path_factory.mktemp("hc")
    out = base / "build.csv"
    rc = main(["build-hc", "--targets", "2", "-o", str(out)])
    assert rc == EXIT_OK
    return base


@pytest.fixture(scope="module")
def fhc_artifacts(tmp_path_factory):
    base = tmp_path_factory.mktemp("fhc")
    out = base / "build.csv"
    rc = main(["build-fhc", "--targets", "3", "--alpha", "1", "-o", str(out)])
    assert rc == EXIT_OK
    return base


class TestBuildAndDiagnose:
    def test_hc_outputs(self, hc_artifacts):
        out = hc_artifacts / "build.csv"
        _, header, rows = _read_csv(out)
        assert header == "k,target_index,m_k,eps_k,target"
        assert len(rows) == 2
        assert (hc_artifacts / "build.series").exists()
        assert (hc_artifacts / "build.plan").exists()

    def test_orbit_plain(self, hc_artifacts, tmp_path):
        out = tmp_path / "orb.csv"
        rc = main(["orbit", "--input", str(hc_artifacts / "build.series"),
                   "--n", "512", "-o", str(out)])
        assert rc == EXIT_OK
        banner, header, rows = _read_csv(out)
        assert header == "n,log_abs_orbit"
        assert len(rows) == 513
        assert "sup_index=" in banner and "bounded=" in banner

    def test_orbit_plan_verifies(self, hc_artifacts, tmp_path):
        out = tmp_path / "v.csv"
        rc = main(["orbit", "--input", str(hc_artifacts / "build.series"),
                   "--plan", str(hc_artifacts / "build.plan"), "-o", str(out)])
        assert rc == EXIT_OK

    def test_orbit_windows(self, hc_artifacts, tmp_path):
        out = tmp_path / "win.csv"
        rc = main(["orbit", "--input", str(hc_artifacts / "build.series"),
                   "--windows", "50,100", "--r-points", "64", "-o", str(out)])
        assert rc == EXIT_OK
        _, header, rows = _read_csv(out)
        assert header == "rmax,C_star"
        vals = [float(r[1]) for r in rows]
        assert len(vals) == 2 and vals[1] > vals[0] > 0

    def test_fhc_schedule_rows(self, fhc_artifacts):
        _, header, rows = _read_csv(fhc_artifacts / "build.csv")
        assert header == "j,target_index,first_n,period,nominal_density,target"
        assert [(r[2], r[3]) for r in rows] == [("191", "16"), ("199", "32"), ("215", "64")]
        assert [r[5] for r in rows] == ["1", "-1", "z"]

    def test_frequency_passes(self, fhc_artifacts, tmp_path):
        out = tmp_path / "f.csv"
        rc = main(["frequency", "--input", str(fhc_artifacts / "build.series"),
                   "--plan", str(fhc_artifacts / "build.plan"),
                   "--n-window", "1024", "--samples", "32", "-o", str(out)])
        assert rc == EXIT_OK
        _, header, rows = _read_csv(out)
        assert header == "j,hit_count,density,nominal_density"
        for r in rows:
            assert float(r[2]) >= float(r[3]) / 2

    def test_frequency_tiny_eps_fails(self, fhc_artifacts, tmp_path):
        out = tmp_path / "f.csv"
        rc = main(["frequency", "--input", str(fhc_artifacts / "build.series"),
                   "--plan", str(fhc_artifacts / "build.plan"),
                   "--eps", "1e-30", "--n-window", "512", "--samples", "16",
                   "-o", str(out)])
        assert rc == EXIT_VERIFY

    def test_decay_on_fhc_build(self, fhc_artifacts, tmp_path):
        out = tmp_path / "d.csv"
        rc = main(["decay", "--input", str(fhc_artifacts / "build.series"),
                   "--m", "512", "-o", str(out)])
        assert rc == EXIT_OK
        _, header, rows = _read_csv(out)
        assert header == "m,sigma_m,event_density"

    def test_build_infeasible_exit(self, tmp_path):
        out = tmp_path / "x.csv"
        rc = main(["build-hc", "--trunc-degree", "64", "-o", str(out)])
        assert rc == EXIT_INFEASIBLE


class TestRunApi:
    def test_unknown_subcommand(self, tmp_path):
        cfg = ExperimentConfig(output=str(tmp_path / "o.csv"))
        assert run("no-such-thing", cfg) == EXIT_CONFIG

    def test_invalid_config_caught(self, tmp_path):
        cfg = ExperimentConfig(alpha="-0.9", output=str(tmp_path / "o.csv"))
        assert run("weights", cfg, {"n": 4}) == EXIT_CONFIG

    def test_option_validation_caught(self, tmp_path):
        cfg = ExperimentConfig(trunc_degree=16, output=str(tmp_path / "o.csv"))
        assert run("weights", cfg, {"n": 32}) == EXIT_CONFIG

    def test_ok_path(self, tmp_path):
        cfg = ExperimentConfig(output=str(tmp_path / "o.csv"))
        assert run("weights", cfg, {"n": 4}) == EXIT_OK

    def test_argparse_error_exits_one(self):
        with pytest.raises(SystemExit) as exc:
            main(["weights", "--precision-bits", "many"])
        assert exc.value.code == EXIT_CONFIG

    def test_missing_subcommand_exits_one(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == EXIT_CONFIG
