from pathlib import Path
from typing import Optional

import typer

from app.commands.common import build_run_spec, output_path, split_list, summary
from app.core.error_handlers import cli_error_boundary
from app.services.bench.output_service import write_records_csv
from app.services.bench.sweep_service import (
    dividing_step,
    geometric_steps,
    match_cpu_comparison,
    reference_final_state,
    work_precision_sweep,
)

DEFAULT_SWEEP_POINTS = 4


def sweep_command(
    problem: Optional[str] = typer.Option(None, "--problem"),
    methods: Optional[str] = typer.Option(None, "--methods", help="Comma-separated method ids"),
    method: Optional[str] = typer.Option(None, "--method", help="Single method (ignored with --methods)"),
    hs: Optional[str] = typer.Option(None, "--hs", help="Comma-separated step sizes"),
    h: Optional[float] = typer.Option(None, "--h", help="Largest step of a halving grid when --hs is absent"),
    t0: Optional[float] = typer.Option(None, "--t0"),
    tf: Optional[float] = typer.Option(None, "--tf"),
    out: Optional[Path] = typer.Option(None, "--out"),
    repeat: Optional[int] = typer.Option(None, "--repeat"),
    config: Optional[Path] = typer.Option(None, "--config"),
    long: bool = typer.Option(False, "--long"),
    match_cpu: bool = typer.Option(
        False, "--match-cpu", help="Append explicit-method rows run at the IRKGL16 optimal wall time"
    ),
):
    """Work-precision sweep: one CSV row per (method, h)."""
    with cli_error_boundary():
        method_list = split_list(methods)
        spec = build_run_spec(
            config,
            long=long,
            problem=problem,
            method=method or (method_list[0] if method_list else None),
            h=h,
            t0=t0,
            tf=tf,
            out=out,
            repeat=repeat,
        )
        steps = split_list(hs, float) or [
            dividing_step(spec.t0, spec.tf, x) for x in geometric_steps(spec.h, DEFAULT_SWEEP_POINTS)
        ]
        reference = reference_final_state(spec, steps)
        records = work_precision_sweep(spec, steps, method_list, reference_final=reference)
        if match_cpu:
            records += match_cpu_comparison(spec, records, method_list or [spec.method], reference)

        path = output_path(spec.out, f"sweep_{spec.problem}.csv")
        write_records_csv(records, path)
        failed = sum(r.failed for r in records)
        summary(f"sweep {spec.problem}: {len(records)} rows ({failed} failed) -> {path}")
