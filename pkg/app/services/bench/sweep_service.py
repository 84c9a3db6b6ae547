import logging
import math
from typing import Iterable, Optional, Sequence

import numpy as np

from app.constants.error_codes import ErrorCode
from app.constants.method_ids import IMPLICIT_METHODS, IRKGL16_SIMD
from app.core.config import CPU_MATCH_TOLERANCE, REFERENCE_STEP_RATIO
from app.core.exceptions import AppException
from app.models.enums.run_flag import RunFlag
from app.models.problems.ode_problem import OdeProblem
from app.schemas.bench.run_schemas import RunSpec, WorkPrecisionRecord
from app.services.bench.metrics_service import energy_series, global_energy_errors, local_energy_errors
from app.services.bench.runner_service import check_method, run_method, timed_method
from app.services.problems.problem_registry_service import get_problem

logger = logging.getLogger(__name__)

MATCH_MAX_ROUNDS = 8


def dividing_step(t0: float, tf: float, h: float) -> float:
    """Closest step to ``h`` that divides [t0, tf] into whole steps."""
    n = max(1, round((tf - t0) / h))
    return (tf - t0) / n


def geometric_steps(h_max: float, count: int, ratio: float = 2.0) -> list[float]:
    return [h_max / ratio**k for k in range(count)]


def _failed_record(spec: RunSpec, exc: AppException) -> WorkPrecisionRecord:
    logger.warning(
        "Sweep entry failed",
        extra={"method": spec.method, "h": spec.h, "error_code": exc.error_code.value},
    )
    return WorkPrecisionRecord(
        method=spec.method,
        h=spec.h,
        steps=0,
        rhs_evals=0,
        total_iters=0,
        wall_seconds=0.0,
        dh_loc_max=math.nan,
        dh_glob_max=math.nan,
        flags=[f"{RunFlag.error.value}:{exc.error_code.value}"],
    )


def measure(problem: OdeProblem, spec: RunSpec, reference_final: Optional[np.ndarray] = None) -> WorkPrecisionRecord:
    """One work-precision point; per-step local metric (save_every = 1)."""
    spec = spec.model_copy(update={"save_every": 1})
    try:
        trajectory = timed_method(problem, spec.method, spec.integrator_config(), spec.repeat, warmup=True)
        energies = energy_series(trajectory, problem)
        dh_loc = float(np.max(local_energy_errors(energies))) if len(energies) > 1 else 0.0
        dh_glob = float(np.max(global_energy_errors(energies)))
    except AppException as exc:
        return _failed_record(spec, exc)

    final_error = None
    if reference_final is not None:
        ref = np.asarray(reference_final, dtype=np.float64)
        final_error = float(np.linalg.norm(trajectory.final_state - ref) / np.linalg.norm(ref))

    return WorkPrecisionRecord(
        method=spec.method,
        h=spec.h,
        steps=trajectory.steps,
        rhs_evals=trajectory.rhs_evals,
        total_iters=trajectory.total_iters,
        wall_seconds=trajectory.wall_seconds,
        dh_loc_max=dh_loc,
        dh_glob_max=dh_glob,
        final_error=final_error,
        flags=list(trajectory.flags),
    )


def _require_hamiltonian(problem: OdeProblem) -> None:
    if problem.hamiltonian is None:
        raise AppException(
            2,
            f"Work-precision sweeps need a Hamiltonian; problem '{problem.label}' has none",
            ErrorCode.INVALID_CONFIG,
            details={"problem": problem.label},
        )


def reference_final_state(
    template: RunSpec,
    hs: Sequence[float],
    ratio: int = REFERENCE_STEP_RATIO,
) -> np.ndarray:
    """IRKGL16-SIMD final state at min(hs) / ratio, snapped to a dividing step."""
    problem = get_problem(template.problem, template.problem_params)
    h = dividing_step(template.t0, template.tf, min(hs) / ratio)
    n_steps = max(1, round((template.tf - template.t0) / h))
    spec = template.model_copy(update={"method": IRKGL16_SIMD, "h": h, "save_every": n_steps})
    logger.info("Computing sweep reference", extra={"h": h, "steps": n_steps})
    return run_method(problem, IRKGL16_SIMD, spec.integrator_config()).final_state


def work_precision_sweep(
    template: RunSpec,
    hs: Iterable[float],
    methods: Optional[Sequence[str]] = None,
    reference_final: Optional[np.ndarray] = None,
) -> list[WorkPrecisionRecord]:
    """One record per (method, h), methods outermost. Failed runs are flagged, not raised."""
    methods = list(methods or [template.method])
    for method in methods:
        check_method(method)
    problem = get_problem(template.problem, template.problem_params)
    _require_hamiltonian(problem)

    records = []
    for method in methods:
        for h in hs:
            spec = template.model_copy(update={"method": method, "h": float(h)})
            record = measure(problem, spec, reference_final)
            records.append(record)
            logger.debug(
                "Sweep point",
                extra={"method": method, "h": h, "dh_loc_max": record.dh_loc_max},
            )
    return records


def optimal_operating_point(records: Sequence[WorkPrecisionRecord], floor_factor: float = 10.0) -> WorkPrecisionRecord:
    """
    Fastest implicit-method record whose local energy error is within
    ``floor_factor`` of the best error reached in the sweep.
    """
    candidates = [r for r in records if r.method in IMPLICIT_METHODS and not r.failed]
    if not candidates:
        raise AppException(
            2,
            "Sweep holds no successful implicit-method records",
            ErrorCode.INVALID_CONFIG,
        )
    floor = min(r.dh_loc_max for r in candidates)
    eligible = [r for r in candidates if r.dh_loc_max <= floor_factor * max(floor, np.finfo(float).tiny)]
    return min(eligible, key=lambda r: r.wall_seconds)


def match_cpu_time(
    spec: RunSpec,
    target_seconds: float,
    tolerance: float = CPU_MATCH_TOLERANCE,
    max_rounds: int = MATCH_MAX_ROUNDS,
    reference_final: Optional[np.ndarray] = None,
) -> WorkPrecisionRecord:
    """
    Adjust h (keeping it a divisor of the interval) until the measured wall
    time is within ``tolerance`` of ``target_seconds``; cost is taken as
    proportional to 1/h. Returns the closest record if no round lands inside.
    """
    if target_seconds <= 0:
        raise AppException(
            2, "Target time must be positive", ErrorCode.INVALID_CONFIG, details={"target": target_seconds}
        )
    problem = get_problem(spec.problem, spec.problem_params)
    h = dividing_step(spec.t0, spec.tf, spec.h)
    best: Optional[WorkPrecisionRecord] = None

    for _ in range(max_rounds):
        record = measure(problem, spec.model_copy(update={"h": h}), reference_final)
        if record.failed:
            return best or record
        gap = abs(record.wall_seconds - target_seconds) / target_seconds
        if best is None or gap < abs(best.wall_seconds - target_seconds) / target_seconds:
            best = record
        if gap <= tolerance or record.wall_seconds <= 0:
            break
        h_next = dividing_step(spec.t0, spec.tf, h * record.wall_seconds / target_seconds)
        if h_next == h:
            break
        h = h_next

    logger.info(
        "CPU-time match",
        extra={"method": spec.method, "h": best.h, "wall_seconds": best.wall_seconds, "target": target_seconds},
    )
    return best


def match_cpu_comparison(
    template: RunSpec,
    records: Sequence[WorkPrecisionRecord],
    methods: Sequence[str],
    reference_final: Optional[np.ndarray] = None,
    tolerance: float = CPU_MATCH_TOLERANCE,
) -> list[WorkPrecisionRecord]:
    """
    Run every explicit method in ``methods`` at the wall time of the IRKGL16
    optimal operating point found in ``records``. Matched rows carry the
    ``cpu_matched`` flag.
    """
    target = optimal_operating_point(records)
    matched = []
    for method in methods:
        if method in IMPLICIT_METHODS:
            continue
        spec = template.model_copy(update={"method": method, "h": target.h})
        record = match_cpu_time(spec, target.wall_seconds, tolerance, reference_final=reference_final)
        record.flags.append(RunFlag.cpu_matched.value)
        matched.append(record)
    return matched
