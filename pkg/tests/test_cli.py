import numpy as np
import pytest

from frac_kinetics import (
    KineticProblem,
    KStruveParams,
    SeriesControl,
    Variant,
    solve_thm1,
    solve_thm2,
)
from frac_kinetics.cli import ENV_MAX_TERMS, main


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv(ENV_MAX_TERMS, raising=False)


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------- eval


def test_eval_ml2_value(capsys):
    code, out, err = _run(capsys, "eval", "ml2", "--alpha", "1", "--beta", "2", "--z", "1")
    assert code == 0
    assert out.strip() == "1.71828182845905"
    assert err == ""


def test_eval_kstruve_at_origin(capsys):
    code, out, _ = _run(
        capsys, "eval", "kstruve", "--nu", "1", "--c", "1", "--k", "2", "--x", "0"
    )
    assert code == 0
    assert out.strip() == "0"


def test_eval_thm1_matches_library(capsys):
    args = ["eval", "thm1", "--n0", "1", "--d", "1", "--upsilon", "0.5",
            "--l", "1", "--c", "1", "--k", "2", "--t", "0.8"]
    code, out, _ = _run(capsys, *args)
    p = KineticProblem(
        n0=1.0, upsilon=0.5, d=1.0, struve=KStruveParams(1.0, 1.0, 2.0), variant=Variant.THM1
    )
    assert code == 0
    assert out.strip() == f"{solve_thm1(p, 0.8):.15g}"


def test_eval_thm3_runs(capsys):
    code, out, _ = _run(
        capsys, "eval", "thm3", "--n0", "1", "--d", "2", "--a", "1",
        "--upsilon", "1", "--l", "1", "--c", "1", "--k", "1", "--t", "0.5",
    )
    assert code == 0
    assert float(out) != 0.0


def test_eval_pole_is_input_error(capsys):
    code, out, err = _run(capsys, "eval", "gamma", "--x", "0")
    assert code == 2
    assert out == ""
    assert err.startswith("error:")
    assert "x" in err and "pole" in err


def test_eval_missing_parameter(capsys):
    code, _, err = _run(capsys, "eval", "struve", "--p", "1")
    assert code == 2
    assert "missing parameter: --x" in err


def test_eval_unknown_function_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "nosuch", "--x", "1"])
    assert exc.value.code == 2


# ---------------------------------------------------------------- sweep


def _read_csv(path):
    text = path.read_text(encoding="utf-8")
    lines = text.splitlines()
    header = lines[0].split(",")
    data = np.array([[float(cell) for cell in line.split(",")] for line in lines[1:]])
    return text, header, data


def test_sweep_default_variant_csv(tmp_path, capsys):
    out_path = tmp_path / "fig.csv"
    code, out, _ = _run(
        capsys, "sweep", "--k-list", "1", "--upsilon-list", "0.5,1,1.5,2",
        "--out", str(out_path),
    )
    assert code == 0
    text, header, data = _read_csv(out_path)
    assert header == ["t", "N_k1_v0.5", "N_k1_v1", "N_k1_v1.5", "N_k1_v2"]
    assert data.shape == (101, 5)
    assert np.allclose(data[:, 0], np.linspace(0.0, 1.0, 101), rtol=1e-14, atol=1e-16)
    assert np.all(data[:, 1:] >= 0.0)
    assert out.startswith("101 rows, 5 columns, N min 0, N max ")
    # the summary's monotonicity claim must agree with the actual columns
    nondecreasing = all(np.all(np.diff(data[:, j]) >= -1e-12) for j in range(1, 5))
    assert ("all columns nondecreasing" in out) == nondecreasing


def test_sweep_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, _, _ = _run(
            capsys, "sweep", "--upsilon-list", "0.5,1", "--out", str(path)
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_cell_matches_eval(tmp_path, capsys):
    out_path = tmp_path / "cell.csv"
    code, _, _ = _run(
        capsys, "sweep", "--variant", "thm2", "--k-list", "2", "--upsilon-list", "0.5",
        "--t-min", "0.5", "--t-max", "1.0", "--points", "3", "--out", str(out_path),
    )
    assert code == 0
    _, header, data = _read_csv(out_path)
    assert header == ["t", "N_k2_v0.5"]
    p = KineticProblem(
        n0=1.0, upsilon=0.5, d=1.0, struve=KStruveParams(1.0, 1.0, 2.0), variant=Variant.THM2
    )
    want = float(f"{solve_thm2(p, 0.75):.15g}")
    assert data[1, 0] == 0.75
    assert data[1, 1] == want


def test_sweep_product_grid_shape(tmp_path, capsys):
    out_path = tmp_path / "grid.csv"
    code, _, _ = _run(
        capsys, "sweep", "--k-list", "1,2,3,4", "--upsilon-list", "0.1,0.2,0.3,0.4",
        "--points", "11", "--out", str(out_path),
    )
    assert code == 0
    _, header, data = _read_csv(out_path)
    assert len(header) == 17
    assert header[1] == "N_k1_v0.1"
    assert header[4] == "N_k1_v0.4"
    assert header[5] == "N_k2_v0.1"
    assert header[-1] == "N_k4_v0.4"
    assert data.shape == (11, 17)


def test_sweep_unwritable_path(tmp_path, capsys):
    code, _, err = _run(
        capsys, "sweep", "--out", str(tmp_path / "nosuchdir" / "x.csv")
    )
    assert code == 2
    assert "cannot write" in err


def test_sweep_bad_points(tmp_path, capsys):
    code, _, err = _run(
        capsys, "sweep", "--points", "1", "--out", str(tmp_path / "x.csv")
    )
    assert code == 2
    assert "points" in err


def test_sweep_bad_list(tmp_path, capsys):
    code, _, err = _run(
        capsys, "sweep", "--k-list", "1,zap", "--out", str(tmp_path / "x.csv")
    )
    assert code == 2
    assert "--k-list" in err


# ---------------------------------------------------------------- verify


def test_verify_thm1_defaults_passes(capsys):
    code, out, _ = _run(capsys, "verify")
    assert code == 0
    assert "max defect" in out
    assert "mean defect" in out
    assert "relative defect" in out
    assert "(tolerance 0.0005)" in out


def test_verify_zero_rate_passes(capsys):
    code, out, _ = _run(capsys, "verify", "--d", "0", "--grid-n", "256")
    assert code == 0


def test_verify_printed_reading_fails_off_k1(capsys):
    code, out, _ = _run(
        capsys, "verify", "--variant", "thm2", "--k", "2", "--upsilon", "0.5",
        "--grid-n", "256", "--exponent-reading", "printed",
    )
    assert code == 1
    assert "relative defect" in out


def test_verify_consistent_reading_passes_off_k1(capsys):
    code, _, _ = _run(
        capsys, "verify", "--variant", "thm2", "--k", "2", "--upsilon", "0.5",
        "--grid-n", "256",
    )
    assert code == 0


def test_verify_small_grid_rejected(capsys):
    code, _, err = _run(capsys, "verify", "--grid-n", "4")
    assert code == 2
    assert "--grid-n" in err


# ---------------------------------------------------------------- knob precedence


ML_ARGS = ("eval", "ml", "--alpha", "0.5", "--z", "-3")


def test_env_changes_truncation(capsys, monkeypatch):
    _, full, _ = _run(capsys, *ML_ARGS)
    monkeypatch.setenv(ENV_MAX_TERMS, "7")
    code, short, _ = _run(capsys, *ML_ARGS)
    assert code == 0
    assert short != full


def test_flag_overrides_env(capsys, monkeypatch):
    _, full, _ = _run(capsys, *ML_ARGS)
    monkeypatch.setenv(ENV_MAX_TERMS, "7")
    code, out, _ = _run(capsys, *ML_ARGS, "--max-terms", "50")
    assert code == 0
    assert out == full


def test_bad_env_value(capsys, monkeypatch):
    monkeypatch.setenv(ENV_MAX_TERMS, "many")
    code, _, err = _run(capsys, *ML_ARGS)
    assert code == 2
    assert ENV_MAX_TERMS in err


def test_config_file_sets_truncation(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(ENV_MAX_TERMS, "7")
    env_out = _run(capsys, *ML_ARGS)[1]
    monkeypatch.delenv(ENV_MAX_TERMS)
    cfg = tmp_path / "knobs.cfg"
    cfg.write_text("# truncation study\nmax_terms = 7\n", encoding="utf-8")
    code, out, _ = _run(capsys, *ML_ARGS, "--config", str(cfg))
    assert code == 0
    assert out == env_out


def test_flag_overrides_config(tmp_path, capsys):
    full = _run(capsys, *ML_ARGS)[1]
    cfg = tmp_path / "knobs.cfg"
    cfg.write_text("max_terms = 7\n", encoding="utf-8")
    code, out, _ = _run(capsys, *ML_ARGS, "--config", str(cfg), "--max-terms", "50")
    assert code == 0
    assert out == full


def test_config_reading_applies_to_eval(tmp_path, capsys):
    args = ("eval", "thm2", "--n0", "1", "--d", "1", "--upsilon", "0.5",
            "--l", "1", "--c", "1", "--k", "2", "--t", "1")
    consistent = _run(capsys, *args)[1]
    cfg = tmp_path / "reading.cfg"
    cfg.write_text("exponent_reading = printed\n", encoding="utf-8")
    code, printed, _ = _run(capsys, *args, "--config", str(cfg))
    assert code == 0
    assert printed != consistent
    p = KineticProblem(
        n0=1.0, upsilon=0.5, d=1.0, struve=KStruveParams(1.0, 1.0, 2.0), variant=Variant.THM2
    )
    assert printed.strip() == f"{solve_thm2(p, 1.0, reading='printed'):.15g}"


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("terms = 7\n", encoding="utf-8")
    code, _, err = _run(capsys, *ML_ARGS, "--config", str(cfg))
    assert code == 2
    assert "unknown config keys" in err


def test_malformed_config_line(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("max_terms 7\n", encoding="utf-8")
    code, _, err = _run(capsys, *ML_ARGS, "--config", str(cfg))
    assert code == 2
    assert "key = value" in err


def test_missing_config_file(tmp_path, capsys):
    code, _, err = _run(capsys, *ML_ARGS, "--config", str(tmp_path / "absent.cfg"))
    assert code == 2
    assert "cannot read config file" in err


def test_bad_max_terms_flag(capsys):
    code, _, err = _run(capsys, *ML_ARGS, "--max-terms", "0")
    assert code == 2
    assert "max_terms" in err


def test_env_value_reaches_default_used_elsewhere(capsys, monkeypatch):
    # the env knob also feeds sweep/verify paths through the same resolver
    monkeypatch.setenv(ENV_MAX_TERMS, "7")
    code, out, _ = _run(capsys, "eval", "ml", "--alpha", "1", "--z", "-10")
    assert code == 0
    # 7 alternating terms of exp(-10) are wildly unconverged
    assert abs(float(out)) > 1.0
