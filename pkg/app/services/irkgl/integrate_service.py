import logging
import math

import numpy as np

from app.constants.error_codes import ErrorCode
from app.constants.method_ids import IRKGL16_SEQ, IRKGL16_SIMD
from app.core.exceptions import AppException
from app.middleware.run_logging import timed_run
from app.models.enums.run_flag import RunFlag
from app.models.irkgl.trajectory import Trajectory
from app.models.irkgl.workspace import StepWorkspace
from app.models.problems.ode_problem import OdeProblem
from app.models.tableau.gauss_tableau import GaussTableau
from app.schemas.irkgl.integrator_schemas import IntegratorConfig
from app.services.irkgl.step_service import LANE_KERNEL, SEQUENTIAL_KERNEL, irkgl_step

logger = logging.getLogger(__name__)

ENDPOINT_RTOL = 1e-9


def check_admissible(problem: OdeProblem, y: np.ndarray, step: int, t: float) -> None:
    if not np.all(np.isfinite(y)):
        logger.error("Non-finite state", extra={"step": step, "t": t})
        raise AppException(
            3,
            "Numerical divergence: non-finite state",
            ErrorCode.NUMERICAL_DIVERGENCE,
            details={"step": step, "t": t},
        )
    if problem.admissible is not None and not problem.admissible(y):
        logger.error("State left the problem domain", extra={"step": step, "t": t})
        raise AppException(
            3,
            f"State left the domain of '{problem.label}'",
            ErrorCode.HORIZON_CROSSED,
            details={"step": step, "t": t, "state": y.tolist()},
        )


def step_schedule(config: IntegratorConfig):
    """(n_steps, h of the last step); the last step lands exactly on tf."""
    n = config.n_steps
    if n == 0:
        return 0, config.h
    last = config.tf - (config.t0 + (n - 1) * config.h)
    return n, last


def endpoint_adjusted(config: IntegratorConfig, h_last: float) -> bool:
    # a dividing h still leaves a last step a few ulps off
    return not math.isclose(h_last, config.h, rel_tol=ENDPOINT_RTOL)


def integrate(
    problem: OdeProblem,
    tableau: GaussTableau,
    config: IntegratorConfig,
    y0: np.ndarray | None = None,
    sequential: bool = False,
) -> Trajectory:
    dtype = config.precision.dtype
    y = np.array(problem.y0 if y0 is None else y0, dtype=dtype).reshape(-1)
    if y.shape[0] != problem.dim:
        raise AppException(
            2,
            "Initial state has the wrong dimension",
            ErrorCode.STATE_SHAPE_MISMATCH,
            details={"expected": problem.dim, "got": int(y.shape[0])},
        )
    if tableau.dtype != dtype:
        raise AppException(
            2,
            "Tableau precision differs from the working precision",
            ErrorCode.INVALID_CONFIG,
            details={"tableau": tableau.dtype.name, "working": dtype.name},
        )

    method = IRKGL16_SEQ if sequential else IRKGL16_SIMD
    kernel = SEQUENTIAL_KERNEL if sequential else LANE_KERNEL
    n_steps, h_last = step_schedule(config)
    flags: list[str] = []
    if n_steps and endpoint_adjusted(config, h_last):
        flags.append(RunFlag.endpoint_adjusted.value)
        logger.info("Last step adjusted to land on tf", extra={"h": config.h, "h_last": h_last})

    ws = StepWorkspace.create(problem.dim, tableau.s, problem.shape, dtype)
    ts, ys = [config.t0], [y.copy()]
    iterations = np.zeros(n_steps, dtype=np.int64)
    capped_steps: list[int] = []

    with timed_run(method, problem.label, config.h) as timer:
        t = config.t0
        for n in range(1, n_steps + 1):
            h = h_last if n == n_steps else config.h
            try:
                outcome = irkgl_step(problem, tableau, config, t, y, ws, h=h, kernel=kernel)
            except AppException as exc:
                exc.details = {**(exc.details or {}), "step": n}
                raise
            y = outcome.y
            iterations[n - 1] = outcome.iterations
            if outcome.capped:
                capped_steps.append(n)
            t = config.tf if n == n_steps else config.t0 + n * config.h
            check_admissible(problem, y, n, t)
            if n % config.save_every == 0 or n == n_steps:
                ts.append(t)
                ys.append(y.copy())

        timer.steps = n_steps
        timer.total_iters = int(iterations.sum())
        timer.capped_steps = len(capped_steps)
        timer.rhs_evals = timer.total_iters * tableau.s

    if capped_steps:
        flags.append(RunFlag.max_iters_reached.value)
        logger.warning(
            "Some steps reached the iteration cap",
            extra={"count": len(capped_steps), "max_iters": config.max_iters},
        )

    return Trajectory(
        method=method,
        problem=problem.label,
        h=config.h,
        t=np.array(ts, dtype=np.float64),
        y=np.array(ys, dtype=dtype),
        steps=n_steps,
        rhs_evals=timer.rhs_evals,
        wall_seconds=timer.wall_seconds,
        iterations=iterations,
        flags=flags,
        capped_steps=capped_steps,
    )
