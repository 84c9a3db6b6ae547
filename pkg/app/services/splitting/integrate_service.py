import logging
from typing import Callable

import numpy as np

from app.constants.error_codes import ErrorCode
from app.core.exceptions import AppException
from app.middleware.run_logging import timed_run
from app.models.enums.run_flag import RunFlag
from app.models.irkgl.trajectory import Trajectory
from app.models.problems.flow_set import FlowSet
from app.models.problems.ode_problem import OdeProblem
from app.schemas.irkgl.integrator_schemas import IntegratorConfig
from app.schemas.splitting.scheme_schemas import ABSplittingScheme
from app.services.irkgl.integrate_service import check_admissible, endpoint_adjusted, step_schedule
from app.services.splitting.scheme_registry_service import Scheme, get_scheme
from app.services.splitting.stepper_service import (
    ab_splitting_step,
    base_step_for,
    composition_step,
    fused_composition_step,
)

logger = logging.getLogger(__name__)

SplittingStep = Callable[[np.ndarray, float], np.ndarray]


def make_splitting_step(scheme: Scheme, flows: FlowSet, fused: bool = True) -> SplittingStep:
    if isinstance(scheme, ABSplittingScheme):
        if len(flows) != 2:
            raise AppException(
                2,
                f"Scheme '{scheme.name}' alternates two flows; the problem splits into {len(flows)}",
                ErrorCode.INCOMPATIBLE_METHOD,
                details={"scheme": scheme.name, "flows": list(flows.labels)},
            )
        flow_a, flow_b = flows.flows
        return lambda z, h: ab_splitting_step(scheme, flow_a, flow_b, h, z)

    if fused:
        return lambda z, h: fused_composition_step(scheme, flows, h, z)
    base = base_step_for(flows)
    return lambda z, h: composition_step(scheme, base, h, z)


def integrate_splitting(
    problem: OdeProblem,
    scheme: Scheme | str,
    config: IntegratorConfig,
    y0: np.ndarray | None = None,
    fused: bool = True,
) -> Trajectory:
    """
    Constant-step run of an explicit splitting scheme. The state is moved
    into the flow variables once and converted back only for stored states.
    """
    if isinstance(scheme, str):
        scheme = get_scheme(scheme)
    if problem.flows is None:
        raise AppException(
            2,
            f"Problem '{problem.label}' provides no exact sub-flows for splitting",
            ErrorCode.INCOMPATIBLE_METHOD,
            details={"scheme": scheme.name},
        )
    flows = problem.flows
    step = make_splitting_step(scheme, flows, fused)

    y = np.array(problem.y0 if y0 is None else y0, dtype=np.float64).reshape(-1)
    n_steps, h_last = step_schedule(config)
    flags: list[str] = []
    if n_steps and endpoint_adjusted(config, h_last):
        flags.append(RunFlag.endpoint_adjusted.value)

    ts, ys = [config.t0], [y.copy()]
    with timed_run(scheme.name, problem.label, config.h) as timer:
        z = flows.enter(y)
        for n in range(1, n_steps + 1):
            h = h_last if n == n_steps else config.h
            z = step(z, h)
            t = config.tf if n == n_steps else config.t0 + n * config.h
            if not np.all(np.isfinite(z)):
                logger.error("Non-finite state", extra={"step": n, "t": t})
                raise AppException(
                    3,
                    "Numerical divergence: non-finite state",
                    ErrorCode.NUMERICAL_DIVERGENCE,
                    details={"step": n, "t": t, "method": scheme.name},
                )
            if n % config.save_every == 0 or n == n_steps:
                y = flows.leave(z)
                check_admissible(problem, y, n, t)
                ts.append(t)
                ys.append(y)

        timer.steps = n_steps
        timer.rhs_evals = n_steps * scheme.stages

    return Trajectory(
        method=scheme.name,
        problem=problem.label,
        h=config.h,
        t=np.array(ts, dtype=np.float64),
        y=np.array(ys, dtype=np.float64),
        steps=n_steps,
        rhs_evals=timer.rhs_evals,
        wall_seconds=timer.wall_seconds,
        iterations=np.zeros(n_steps, dtype=np.int64),
        flags=flags,
    )
