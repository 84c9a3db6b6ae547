import logging
from pathlib import Path
from typing import Optional

import typer

from app.commands.common import build_run_spec, output_path, summary
from app.core.error_handlers import cli_error_boundary
from app.models.enums.iteration_mode import IterationMode
from app.services.bench.output_service import write_report_json, write_trajectory_csv
from app.services.bench.runner_service import run_spec

logger = logging.getLogger(__name__)


def run_command(
    problem: Optional[str] = typer.Option(None, "--problem", help="Problem id (see `list`)"),
    method: Optional[str] = typer.Option(None, "--method", help="Method id (see `list`)"),
    h: Optional[float] = typer.Option(None, "--h", help="Constant step size"),
    t0: Optional[float] = typer.Option(None, "--t0"),
    tf: Optional[float] = typer.Option(None, "--tf"),
    save_every: Optional[int] = typer.Option(None, "--save-every", help="Store every n-th step"),
    out: Optional[Path] = typer.Option(None, "--out", help="Trajectory CSV; the JSON report goes next to it"),
    repeat: Optional[int] = typer.Option(None, "--repeat", help="Timed repetitions; the minimum is reported"),
    mode: Optional[IterationMode] = typer.Option(None, "--mode", help="IRKGL16 iteration form"),
    config: Optional[Path] = typer.Option(None, "--config", help="JSON file with RunSpec fields"),
    long: bool = typer.Option(False, "--long", help="Use the production-length interval"),
):
    """Integrate one problem with one method and write CSV + JSON report."""
    with cli_error_boundary():
        spec = build_run_spec(
            config,
            long=long,
            problem=problem,
            method=method,
            h=h,
            t0=t0,
            tf=tf,
            save_every=save_every,
            out=out,
            repeat=repeat,
            mode=mode,
        )
        trajectory, report = run_spec(spec)

        csv_path = output_path(spec.out, f"{spec.problem}_{spec.method}.csv")
        write_trajectory_csv(trajectory, csv_path)
        write_report_json(report, csv_path.with_suffix(".json"))

        summary(
            f"{report.method} {report.problem} h={report.h!r} steps={report.steps} "
            f"rhs={report.total_rhs_evals} iters={report.total_iters} "
            f"wall={report.wall_seconds:.3f}s dh_glob_max={report.dh_glob_max} -> {csv_path}"
        )
