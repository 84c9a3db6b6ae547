import logging
from typing import Callable, NamedTuple

import numpy as np

from app.models.enums.iteration_mode import IterationMode
from app.models.irkgl.workspace import StepWorkspace
from app.models.problems.ode_problem import OdeProblem
from app.models.tableau.gauss_tableau import GaussTableau
from app.schemas.irkgl.integrator_schemas import IntegratorConfig
from app.services.irkgl.iteration_service import (
    component_deltas,
    fixed_point_sweep,
    init_guess,
    partitioned_sweep,
    require_second_order,
    stop_check,
)
from app.services.irkgl.sequential_service import (
    sequential_init_guess,
    sequential_partitioned_sweep,
    sequential_sweep,
)
from app.services.lanes.lane_service import lane_sum_rows

logger = logging.getLogger(__name__)


class StepKernel(NamedTuple):
    init: Callable
    sweep: Callable
    partitioned: Callable


LANE_KERNEL = StepKernel(init_guess, fixed_point_sweep, partitioned_sweep)
SEQUENTIAL_KERNEL = StepKernel(sequential_init_guess, sequential_sweep, sequential_partitioned_sweep)


class StepOutcome(NamedTuple):
    y: np.ndarray
    iterations: int
    capped: bool


def irkgl_step(
    problem: OdeProblem,
    tableau: GaussTableau,
    config: IntegratorConfig,
    t_prev: float,
    y_prev: np.ndarray,
    workspace: StepWorkspace,
    h: float | None = None,
    kernel: StepKernel = LANE_KERNEL,
) -> StepOutcome:
    """
    One step: extrapolated guess, sweeps until the stagnation criterion or
    ``max_iters``, then y_next = y_prev + sum(L) from the last sweep.
    """
    h = config.h if h is None else h
    ws = workspace
    ws.begin_step()

    partitioned = config.mode == IterationMode.partitioned_second_order
    if partitioned:
        sweep = kernel.partitioned
        checked = slice(0, require_second_order(problem).d)
    else:
        sweep = kernel.sweep
        checked = slice(None)

    kernel.init(tableau, y_prev, ws.L_prev, ws.Y, ws.has_history)

    capped = True
    for k in range(1, config.max_iters + 1):
        sweep(problem, tableau, t_prev, h, y_prev, ws.Y, ws.Y_next, ws.F, ws.L)
        ws.delta_history.append(component_deltas(ws.Y_next, ws.Y, checked))
        ws.iter_count = k
        ws.swap_iterates()
        if stop_check(ws.delta_history, k):
            capped = False
            break

    if capped:
        logger.warning(
            "Iteration cap reached; step accepted with the last iterate",
            extra={"t": t_prev, "h": h, "max_iters": config.max_iters},
        )

    y_next = y_prev + lane_sum_rows(ws.L.data)
    ws.commit_increments()
    return StepOutcome(y=y_next, iterations=ws.iter_count, capped=capped)
