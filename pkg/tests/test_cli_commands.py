# tests/test_cli_commands.py
#
# Covers: list, run, sweep, trace commands through the typer app
# Validates: output files, config-file / flag precedence, exit codes
#            (2 configuration, 3 divergence, 4 I/O).

import orjson
from typer.testing import CliRunner

from main import app

runner = CliRunner()


# -----------------------------------------------------------------------
# HELPERS
# -----------------------------------------------------------------------

def _invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


def _run_args(tmp_path, **overrides):
    values = {
        "--problem": "henon-heiles",
        "--method": "strang",
        "--h": 0.1,
        "--tf": 1.0,
        "--repeat": 1,
        "--out": tmp_path / "run.csv",
    }
    values.update(overrides)
    args = ["run"]
    for key, value in values.items():
        args += [key, value]
    return args


# -----------------------------------------------------------------------
# LIST
# -----------------------------------------------------------------------

def test_list_shows_problems_and_methods():
    result = _invoke("list")
    assert result.exit_code == 0
    for name in (
        "henon-heiles", "schwarzschild", "irkgl16-simd", "irkgl16-seq",
        "bm02", "ss05-10", "cmp8-19", "ss05-6", "ss05-8", "bce22",
    ):
        assert name in result.output


# -----------------------------------------------------------------------
# RUN
# -----------------------------------------------------------------------

def test_run_writes_trajectory_and_report(tmp_path):
    result = _invoke(*_run_args(tmp_path, **{"--method": "irkgl16-simd"}))
    assert result.exit_code == 0, result.output
    csv_lines = (tmp_path / "run.csv").read_text(encoding="utf-8").splitlines()
    assert csv_lines[0] == "t,y0,y1,y2,y3"
    assert len(csv_lines) == 12
    report = orjson.loads((tmp_path / "run.json").read_bytes())
    assert report["method"] == "irkgl16-simd"
    assert report["steps"] == 10
    assert report["total_rhs_evals"] == 8 * report["total_iters"]
    assert "irkgl16-simd" in result.output


def test_run_partitioned_mode(tmp_path):
    result = _invoke(*_run_args(tmp_path, **{"--method": "irkgl16-seq"}), "--mode", "partitioned-second-order")
    assert result.exit_code == 0, result.output


def test_config_file_values_overridden_by_flags(tmp_path):
    config = tmp_path / "spec.json"
    config.write_bytes(orjson.dumps({
        "problem": "henon-heiles",
        "method": "suz90",
        "h": 0.1,
        "tf": 1.0,
        "repeat": 1,
        "out": str(tmp_path / "cfg.csv"),
    }))
    result = _invoke("run", "--config", config, "--h", 0.2)
    assert result.exit_code == 0, result.output
    report = orjson.loads((tmp_path / "cfg.json").read_bytes())
    assert report["method"] == "suz90"
    assert report["h"] == 0.2
    assert report["steps"] == 5


def test_unknown_method_exits_2(tmp_path):
    result = _invoke(*_run_args(tmp_path, **{"--method": "rk4"}))
    assert result.exit_code == 2


def test_unknown_problem_exits_2(tmp_path):
    result = _invoke(*_run_args(tmp_path, **{"--problem": "kepler"}))
    assert result.exit_code == 2


def test_incompatible_method_exits_2(tmp_path):
    result = _invoke(*_run_args(tmp_path, **{"--problem": "schwarzschild", "--method": "bm02", "--h": 1.0, "--tf": 10.0}))
    assert result.exit_code == 2
    assert not (tmp_path / "run.csv").exists()


def test_negative_step_exits_2(tmp_path):
    result = _invoke(*_run_args(tmp_path, **{"--h": -0.1}))
    assert result.exit_code == 2


def test_missing_config_file_exits_2(tmp_path):
    result = _invoke("run", "--config", tmp_path / "nope.json")
    assert result.exit_code == 2


def test_divergence_exits_3(tmp_path):
    result = _invoke(*_run_args(tmp_path, **{"--h": 5.0, "--tf": 5000.0}))
    assert result.exit_code == 3


def test_unwritable_output_exits_4(tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x", encoding="utf-8")
    result = _invoke(*_run_args(tmp_path, **{"--out": blocker / "run.csv"}))
    assert result.exit_code == 4


# -----------------------------------------------------------------------
# SWEEP / TRACE
# -----------------------------------------------------------------------

def test_sweep_writes_one_row_per_method_and_step(tmp_path):
    out = tmp_path / "sweep.csv"
    result = _invoke(
        "sweep", "--problem", "henon-heiles", "--methods", "strang,suz90",
        "--hs", "0.2,0.1", "--tf", 1.0, "--repeat", 1, "--out", out,
    )
    assert result.exit_code == 0, result.output
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 5
    assert lines[1].startswith("strang,0.2,")
    assert lines[4].startswith("suz90,0.1,")


def test_sweep_default_grid_uses_dividing_steps(tmp_path):
    out = tmp_path / "grid.csv"
    result = _invoke(
        "sweep", "--problem", "henon-heiles", "--method", "strang",
        "--h", 0.3, "--tf", 3.0, "--repeat", 1, "--out", out,
    )
    assert result.exit_code == 0, result.output
    assert len(out.read_text(encoding="utf-8").splitlines()) == 5


def test_trace_energy_series(tmp_path):
    out = tmp_path / "trace.csv"
    result = _invoke(
        "trace", "--problem", "henon-heiles", "--method", "strang",
        "--h", 0.1, "--tf", 1.0, "--metric", "energy", "--out", out,
    )
    assert result.exit_code == 0, result.output
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "t,energy"
    assert len(lines) == 12


def test_trace_unknown_selector_exits_2(tmp_path):
    result = _invoke(
        "trace", "--problem", "henon-heiles", "--method", "strang",
        "--h", 0.1, "--tf", 1.0, "--metric", "planet:1", "--out", tmp_path / "t.csv",
    )
    assert result.exit_code == 2


def test_sweep_match_cpu_appends_matched_rows(tmp_path):
    out = tmp_path / "matched.csv"
    result = _invoke(
        "sweep", "--problem", "henon-heiles", "--methods", "irkgl16-simd,strang",
        "--hs", "0.2,0.1", "--tf", 1.0, "--repeat", 1, "--out", out, "--match-cpu",
    )
    assert result.exit_code == 0, result.output
    lines = out.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    assert header[-2:] == ["final_error", "flags"]
    assert len(lines) == 6
    assert lines[5].startswith("strang,")
    assert lines[5].endswith("cpu_matched")
    for line in lines[1:]:
        assert float(line.split(",")[header.index("final_error")]) >= 0.0


def test_sweep_without_hamiltonian_exits_2(tmp_path):
    config = tmp_path / "forced.json"
    config.write_bytes(orjson.dumps({
        "problem": "henon-heiles",
        "problem_params": {"xi": 0.1},
        "method": "irkgl16-simd",
        "h": 0.1,
        "tf": 1.0,
        "repeat": 1,
        "out": str(tmp_path / "forced.csv"),
    }))
    result = _invoke("sweep", "--config", config)
    assert result.exit_code == 2
