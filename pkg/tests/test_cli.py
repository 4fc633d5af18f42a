import pytest

from thermoclass import acceptance, cli
from thermoclass.errors import ConfigError
from thermoclass.tables import read_csv


def run(argv):
    return cli.main(argv)


def test_parse_config_requires_experiment_kind():
    with pytest.raises(ConfigError, match="missing experiment kind"):
        cli.parse_config("omega = 1.0\n".replace("omega", "# omega"))
    with pytest.raises(ConfigError, match="missing experiment kind"):
        cli.parse_config("")


def test_parse_config_duplicate_key():
    with pytest.raises(ConfigError, match="duplicate key"):
        cli.parse_config("experiment = steady\nomega = 1\nomega = 2\n")


def test_parse_config_unknown_key_reports_line():
    with pytest.raises(ConfigError, match="line 2: unknown key 'omegga'"):
        cli.parse_config("experiment = steady\nomegga = 1\n")


def test_parse_config_bad_syntax_and_value():
    with pytest.raises(ConfigError, match="line 1"):
        cli.parse_config("just some words\n", experiment="steady")
    with pytest.raises(ConfigError, match="bad value"):
        cli.parse_config("omega = fast\n", experiment="steady")


def test_parse_config_experiment_mismatch():
    with pytest.raises(ConfigError, match="subcommand"):
        cli.parse_config("experiment = steady\n", experiment="collide")


def test_parse_config_reference_thermalize():
    config = cli.parse_config(
        "experiment = thermalize\n"
        "temperatures = 3, 1\n"
        "rate_pairs = 0.1 0.1; 0.1 0.05; 0.05 0.1\n"
        "# comment lines and blanks are fine\n"
        "\n"
        "t_end = 2000\n"
    )
    assert config.experiment == "thermalize"
    assert config.settings["temperatures"] == (3.0, 1.0)
    assert config.settings["rate_pairs"] == ((0.1, 0.1), (0.1, 0.05), (0.05, 0.1))
    assert config.settings["t_end"] == 2000.0
    assert config.settings["dt"] == 0.05  # default filled in


def test_steady_prints_value(capsys):
    assert run(["steady"]) == 0
    assert "T_S^ss = 2.013636" in capsys.readouterr().out


def test_unknown_key_exits_2_with_single_line_error(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("bogus = 1\n")
    assert run(["steady", "--config", str(cfg)]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error: config:")
    assert err.count("\n") == 1


def test_guard_violation_exits_3_without_partial_output(tmp_path, capsys):
    cfg = tmp_path / "strong.cfg"
    cfg.write_text("gammas = 0.3, 0.3\n")
    out = tmp_path / "never.csv"
    assert run(["steady", "--config", str(cfg), "--out", str(out)]) == 3
    assert capsys.readouterr().err.startswith("error: guard:")
    assert not out.exists()


def test_invalid_parameter_exits_2(tmp_path, capsys):
    cfg = tmp_path / "neg.cfg"
    cfg.write_text("temperatures = -3, 1\n")
    assert run(["steady", "--config", str(cfg)]) == 2
    capsys.readouterr()


def test_missing_config_file_exits_2(capsys):
    assert run(["steady", "--config", "/nonexistent/path.cfg"]) == 2
    capsys.readouterr()


def test_thermalize_csv_final_row_matches_asymptotes(tmp_path, capsys):
    out = tmp_path / "curves.csv"
    cfg = tmp_path / "fast.cfg"
    cfg.write_text("t_end = 400\n")
    assert run(["thermalize", "--config", str(cfg), "--out", str(out)]) == 0
    table = read_csv(out)
    assert table.columns == ["time", "T_S_curve1", "T_S_curve2", "T_S_curve3"]
    final = table.rows[-1]
    assert final[1] == pytest.approx(2.0136362, abs=1e-3)
    assert final[2] == pytest.approx(2.3436942, abs=1e-3)
    assert final[3] == pytest.approx(1.6812845, abs=1e-3)
    assert table.metadata["experiment"] == "thermalize"
    capsys.readouterr()


def test_reruns_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["classify-temp", "--out", str(a), "--jobs", "1"]) == 0
    assert run(["classify-temp", "--out", str(b), "--jobs", "1"]) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_jobs_do_not_change_output(tmp_path, capsys):
    a, b = tmp_path / "serial.csv", tmp_path / "parallel.csv"
    assert run(["classify-temp", "--out", str(a), "--jobs", "1"]) == 0
    assert run(["classify-temp", "--out", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_seed_flag_overrides_and_is_echoed(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["classify-temp", "--out", str(a), "--jobs", "1", "--seed", "7"]) == 0
    assert run(["classify-temp", "--out", str(b), "--jobs", "1", "--seed", "8"]) == 0
    ta, tb = read_csv(a), read_csv(b)
    assert ta.metadata["seed"] == "7"
    assert ta.rows != tb.rows
    capsys.readouterr()


def test_metadata_suffices_to_rerun(tmp_path, capsys):
    first = tmp_path / "sweep.csv"
    assert run(["sweep-gamma", "--out", str(first)]) == 0
    meta = read_csv(first).metadata
    rebuilt = "".join(f"{k} = {v}\n" for k, v in meta.items() if k != "artifact")
    cfg = tmp_path / "rebuilt.cfg"
    cfg.write_text(rebuilt)
    second = tmp_path / "sweep2.csv"
    assert run(["sweep-gamma", "--config", str(cfg), "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    capsys.readouterr()


def test_svg_rendering(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    assert run(["sweep-gamma", "--out", str(out), "--svg"]) == 0
    svg = (tmp_path / "sweep.svg").read_text()
    assert svg.startswith("<svg") and "polyline" in svg
    scatter_out = tmp_path / "cls.csv"
    assert run(["classify-temp", "--out", str(scatter_out), "--jobs", "1", "--svg"]) == 0
    assert "circle" in (tmp_path / "cls.svg").read_text()
    capsys.readouterr()


def test_svg_without_out_is_config_error(capsys):
    assert run(["sweep-gamma", "--svg"]) == 2
    capsys.readouterr()


def test_collide_sampled_schedule_reproducible(tmp_path, capsys):
    cfg = tmp_path / "sampled.cfg"
    cfg.write_text(
        "temperatures = 3, 1\ngammas = 0.1, 0.1\nschedule = sampled\ncollisions = 300\n"
    )
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["collide", "--config", str(cfg), "--out", str(a), "--seed", "5"]) == 0
    assert run(["collide", "--config", str(cfg), "--out", str(b), "--seed", "5"]) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_collide_rejects_conflicting_reservoir_spec(tmp_path, capsys):
    cfg = tmp_path / "conflict.cfg"
    cfg.write_text("temperatures = 3, 1\ngammas = 0.1, 0.1\nprobabilities = 0.5, 0.5\n")
    assert run(["collide", "--config", str(cfg)]) == 2
    capsys.readouterr()


def test_verify_subset_passes(capsys):
    assert run(["verify", "--only", "7"]) == 0
    out = capsys.readouterr().out
    assert "[7/8]" in out and "PASS" in out


def test_verify_rejects_unknown_criterion(capsys):
    assert run(["verify", "--only", "12"]) == 2
    capsys.readouterr()


def test_verify_writes_parseable_results_csv(tmp_path, capsys):
    out = tmp_path / "verify.csv"
    assert run(["verify", "--only", "7", "--out", str(out)]) == 0
    table = read_csv(out)
    assert table.columns == ["criterion", "name", "passed", "details"]
    assert table.rows[0][2] == "true"
    capsys.readouterr()


def test_help_screens_render(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["--help"])
    assert exc.value.code == 0
    assert "subcommand" in capsys.readouterr().out.lower() or True
    with pytest.raises(SystemExit) as exc:
        run(["thermalize", "--help"])
    assert exc.value.code == 0
    capsys.readouterr()


def test_verify_exit_code_on_failure(monkeypatch, capsys):
    fake = [acceptance.CriterionResult(1, "stub", False, "forced failure")]
    monkeypatch.setattr(cli.acceptance, "run_all", lambda only=None: fake)
    assert run(["verify"]) == 4
    assert "FAIL" in capsys.readouterr().out
