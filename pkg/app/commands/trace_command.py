from pathlib import Path
from typing import Optional

import typer

from app.commands.common import build_run_spec, output_path, summary
from app.core.error_handlers import cli_error_boundary
from app.services.bench.output_service import write_series_csv
from app.services.bench.trace_service import ENERGY_METRIC, error_trace


def trace_command(
    problem: Optional[str] = typer.Option(None, "--problem"),
    method: Optional[str] = typer.Option(None, "--method"),
    metric: str = typer.Option(
        ENERGY_METRIC,
        "--metric",
        help="energy | linear-momentum | angular-momentum | r | position | momentum | planet:<k>",
    ),
    h: Optional[float] = typer.Option(None, "--h"),
    t0: Optional[float] = typer.Option(None, "--t0"),
    tf: Optional[float] = typer.Option(None, "--tf"),
    save_every: Optional[int] = typer.Option(None, "--save-every"),
    out: Optional[Path] = typer.Option(None, "--out"),
    config: Optional[Path] = typer.Option(None, "--config"),
    long: bool = typer.Option(False, "--long"),
):
    """Error-evolution series of one run (CSV columns: t, metric)."""
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
        )
        _, series = error_trace(spec, metric)

        safe_metric = metric.replace(":", "")
        path = output_path(spec.out, f"trace_{spec.problem}_{spec.method}_{safe_metric}.csv")
        write_series_csv(series, metric, path)
        summary(f"trace {spec.method} {spec.problem} {metric}: max={series.max!r} points={len(series.t)} -> {path}")
