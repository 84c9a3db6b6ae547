import csv
import logging
from pathlib import Path
from typing import Iterable, Sequence

import orjson

from app.constants.error_codes import ErrorCode
from app.core.exceptions import AppException
from app.models.irkgl.trajectory import Trajectory
from app.schemas.bench.run_schemas import SWEEP_COLUMNS, RunReport, WorkPrecisionRecord
from app.services.bench.metrics_service import ErrorSeries

logger = logging.getLogger(__name__)


def _fmt(value) -> str:
    # repr is the shortest string that parses back to the same double
    return repr(float(value))


def _open_for_write(path: Path):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        return path.open("w", newline="", encoding="utf-8")
    except OSError as exc:
        raise AppException(
            4,
            "Cannot write output file",
            ErrorCode.OUTPUT_WRITE_FAILED,
            details={"path": str(path), "reason": exc.strerror},
        )


def _write_rows(path: Path, fieldnames: Sequence[str], rows: Iterable[dict]) -> Path:
    with _open_for_write(path) as f:
        w = csv.DictWriter(f, fieldnames=list(fieldnames), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow(row)
    logger.debug("CSV written", extra={"path": str(path)})
    return Path(path)


# =========================
# CSV
# =========================
def write_trajectory_csv(trajectory: Trajectory, path: Path) -> Path:
    dim = trajectory.y.shape[1]
    fields = ["t"] + [f"y{k}" for k in range(dim)]
    rows = (
        {"t": _fmt(t), **{f"y{k}": _fmt(y[k]) for k in range(dim)}}
        for t, y in zip(trajectory.t, trajectory.y)
    )
    return _write_rows(path, fields, rows)


def write_records_csv(records: Sequence[WorkPrecisionRecord], path: Path) -> Path:
    def row(r: WorkPrecisionRecord) -> dict:
        return {
            "method": r.method,
            "h": _fmt(r.h),
            "steps": r.steps,
            "rhs_evals": r.rhs_evals,
            "total_iters": r.total_iters,
            "wall_seconds": _fmt(r.wall_seconds),
            "dh_loc_max": _fmt(r.dh_loc_max),
            "dh_glob_max": _fmt(r.dh_glob_max),
            "final_error": "" if r.final_error is None else _fmt(r.final_error),
            "flags": ";".join(r.flags),
        }

    return _write_rows(path, SWEEP_COLUMNS, (row(r) for r in records))


def _parse_record(row: dict) -> WorkPrecisionRecord:
    row = dict(row)
    row["final_error"] = row.get("final_error") or None
    row["flags"] = [flag for flag in (row.get("flags") or "").split(";") if flag]
    return WorkPrecisionRecord.model_validate(row)


def read_records_csv(path: Path) -> list[WorkPrecisionRecord]:
    with Path(path).open(newline="", encoding="utf-8") as f:
        return [_parse_record(row) for row in csv.DictReader(f)]


def write_series_csv(series: ErrorSeries, metric: str, path: Path) -> Path:
    rows = ({"t": _fmt(t), metric: _fmt(v)} for t, v in zip(series.t, series.values))
    return _write_rows(path, ["t", metric], rows)


# =========================
# JSON
# =========================
def write_report_json(report: RunReport, path: Path) -> Path:
    path = Path(path)
    payload = orjson.dumps(report.model_dump(mode="json"), option=orjson.OPT_INDENT_2)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(payload)
    except OSError as exc:
        raise AppException(
            4,
            "Cannot write run report",
            ErrorCode.OUTPUT_WRITE_FAILED,
            details={"path": str(path), "reason": exc.strerror},
        )
    return path
