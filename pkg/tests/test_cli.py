import numpy as np
import pytest

from ordext import InputError
from ordext.cli import main, parse_and_validate, read_series_csv


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_simulate_config():
    cfg = parse_and_validate(["simulate", "--c", "0.25", "--s", "2",
                              "--n", "500", "--seed", "7", "--out", "a.csv"])
    assert cfg.command == "simulate"
    assert cfg["c"] == 0.25 and cfg["s"] == 2.0
    assert cfg["n"] == 500 and cfg["seed"] == 7


def test_parse_rejects_invalid_boundary(capsys):
    code, _, err = run_cli(capsys, "simulate", "--c", "0.7", "--out", "x.csv")
    assert code != 0
    assert "c" in err


def test_config_file_precedence(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("s = 2\nc = 0.3\n")
    cfg = parse_and_validate(["depfn", "--config", str(conf), "--s", "3"])
    assert cfg["s"] == 3.0      # flag wins
    assert cfg["c"] == 0.3      # file fills the rest


def test_config_file_unknown_key(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("definitely_not_a_key = 1\n")
    code, _, err = run_cli(capsys, "depfn", "--config", str(conf))
    assert code != 0
    assert "unknown key" in err


def test_required_option_enforced(capsys):
    code, _, err = run_cli(capsys, "simulate")
    assert code != 0
    assert "--out" in err


def test_simulate_deterministic(tmp_path, capsys):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    for out in (out1, out2):
        code, _, _ = run_cli(capsys, "simulate", "--c", "0.25", "--s", "2",
                             "--n", "50", "--seed", "7", "--out", str(out))
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()
    series = read_series_csv(str(out1))
    assert len(series) == 50


def test_simulate_with_margins_orders_pairs(tmp_path, capsys):
    out = tmp_path / "d.csv"
    code, _, _ = run_cli(capsys, "simulate", "--c", str(1 / 33), "--s", "2",
                         "--n", "80", "--seed", "3", "--out", str(out),
                         "--mu-x", "100", "--sigma-x", "4", "--xi-x", "0.2",
                         "--mu-y", "150", "--sigma-y", "2", "--xi-y", "0.2",
                         "--slope-x", "-40", "--slope-y", "-40")
    assert code == 0
    series = read_series_csv(str(out))
    assert series.is_ordered()


def test_simulate_partial_margins_rejected(capsys):
    code, _, err = run_cli(capsys, "simulate", "--out", "x.csv",
                           "--mu-x", "100")
    assert code != 0
    assert "margin" in err


def test_estimate_c(tmp_path, capsys):
    data = tmp_path / "pairs.csv"
    data.write_text("t,x,y\n0.0,0.69,0.31\n0.5,1.0,1.0\n1.0,0.5,1.5\n")
    code, out, _ = run_cli(capsys, "estimate-c", "--data", str(data))
    assert code == 0
    assert out.strip() == "0.31"


def test_depfn_stdout_value(capsys):
    code, out, _ = run_cli(capsys, "depfn", "--family", "restricted",
                           "--c", "0.25", "--s", "1", "--grid", "3")
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert lines[0] == "omega,value"
    w, v = lines[2].split(",")
    assert float(w) == 0.5
    assert abs(float(v) - 5.0 / 6.0) < 1e-12
    assert v.startswith("0.833333")


def test_depfn_file_and_svg_deterministic(tmp_path, capsys):
    args = ["depfn", "--family", "interval", "--c1", "0.25", "--c2", "0.75",
            "--s", "2"]
    paths = []
    for tag in ("p", "q"):
        csv = tmp_path / f"{tag}.csv"
        svg = tmp_path / f"{tag}.svg"
        code, _, _ = run_cli(capsys, *args, "--out", str(csv), "--svg", str(svg))
        assert code == 0
        paths.append((csv.read_bytes(), svg.read_bytes()))
    assert paths[0] == paths[1]


def test_validate_command_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "validate", "--family", "restricted",
                           "--c", "0.3", "--s", "1.5")
    assert code == 0
    assert "[PASS]" in out
    code, _, err = run_cli(capsys, "validate", "--family", "asymmetric",
                           "--theta1", "1.4")
    assert code != 0


def test_missing_file_error(capsys):
    code, _, err = run_cli(capsys, "fit", "--data", "/nonexistent.csv",
                           "--out-dir", "/tmp/nowhere")
    assert code != 0
    assert err


def test_out_dir_env_var(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ORDEXT_OUT_DIR", str(tmp_path))
    code, _, _ = run_cli(capsys, "simulate", "--n", "10", "--seed", "1",
                         "--out", "rel.csv")
    assert code == 0
    assert (tmp_path / "rel.csv").exists()


def test_fit_and_diagnose_pipeline(tmp_path, capsys):
    data = tmp_path / "data.csv"
    code, _, _ = run_cli(capsys, "simulate", "--c", str(1 / 33), "--s", "2",
                         "--n", "60", "--seed", "5", "--out", str(data),
                         "--mu-x", "100", "--sigma-x", "4", "--xi-x", "0.2",
                         "--mu-y", "150", "--sigma-y", "2", "--xi-y", "0.2",
                         "--slope-x", "-40", "--slope-y", "-40")
    assert code == 0
    fit_dir = tmp_path / "fit"
    code, out, _ = run_cli(capsys, "fit", "--data", str(data),
                           "--lambda-x", "100", "--lambda-y", "100",
                           "--max-outer", "12", "--out-dir", str(fit_dir))
    assert code == 0
    for name in ("params.csv", "trends.csv", "trace.csv"):
        assert (fit_dir / name).exists()
    assert "c_hat" in out

    trace = (fit_dir / "trace.csv").read_text().splitlines()
    assert trace[0].split(",")[0] == "iteration"
    assert len(trace) >= 3

    diag_dir = tmp_path / "diag"
    code, _, _ = run_cli(capsys, "diagnose", "--data", str(data),
                         "--fit-dir", str(fit_dir), "--out-dir", str(diag_dir))
    assert code == 0
    from ordext import read_table
    for name in ("pp_x.csv", "pp_y.csv", "qq_x.csv", "qq_y.csv",
                 "structure_pooled_min.csv"):
        path = diag_dir / name
        assert path.exists()
        table = read_table(str(path))   # every emitted table re-parses
        assert len(table.x) == 60


def test_read_series_csv_without_time_column(tmp_path):
    f = tmp_path / "xy.csv"
    f.write_text("x,y\n1.0,2.0\n2.0,3.0\n3.0,4.0\n")
    series = read_series_csv(str(f))
    assert np.allclose(series.t, [0.0, 0.5, 1.0])
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1.0,2.0\n")
    with pytest.raises(InputError):
        read_series_csv(str(bad))


def test_study_requires_design_flag(capsys):
    code, _, err = run_cli(capsys, "study", "--out-dir", "/tmp/s")
    assert code != 0
    assert "paper-defaults" in err
