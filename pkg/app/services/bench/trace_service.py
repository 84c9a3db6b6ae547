import logging

from app.constants.method_ids import IRKGL16_SIMD
from app.core.config import REFERENCE_STEP_RATIO
from app.models.irkgl.trajectory import Trajectory
from app.schemas.bench.run_schemas import RunSpec
from app.services.bench.metrics_service import (
    ErrorSeries,
    angular_momentum_error_series,
    component_error_series,
    global_energy_error_series,
    momentum_error_series,
)
from app.services.bench.runner_service import run_method
from app.services.problems.problem_registry_service import get_problem

logger = logging.getLogger(__name__)

ENERGY_METRIC = "energy"
MOMENTUM_METRIC = "linear-momentum"
ANGULAR_METRIC = "angular-momentum"
INVARIANT_METRICS = (ENERGY_METRIC, MOMENTUM_METRIC, ANGULAR_METRIC)


def reference_spec(spec: RunSpec, ratio: int = REFERENCE_STEP_RATIO) -> RunSpec:
    """IRKGL16-SIMD at h / ratio, saving at the same times as ``spec``."""
    return spec.model_copy(
        update={
            "method": IRKGL16_SIMD,
            "h": spec.h / ratio,
            "save_every": spec.save_every * ratio,
        }
    )


def reference_trajectory(spec: RunSpec, ratio: int = REFERENCE_STEP_RATIO) -> Trajectory:
    ref = reference_spec(spec, ratio)
    problem = get_problem(ref.problem, ref.problem_params)
    logger.info("Computing reference trajectory", extra={"h": ref.h, "save_every": ref.save_every})
    return run_method(problem, ref.method, ref.integrator_config())


def error_trace(spec: RunSpec, metric: str, ratio: int = REFERENCE_STEP_RATIO) -> tuple[Trajectory, ErrorSeries]:
    """Error-evolution series of one run for an invariant or a state selector."""
    problem = get_problem(spec.problem, spec.problem_params)
    trajectory = run_method(problem, spec.method, spec.integrator_config())

    if metric == ENERGY_METRIC:
        return trajectory, global_energy_error_series(trajectory, problem)
    if metric == MOMENTUM_METRIC:
        return trajectory, momentum_error_series(trajectory, problem)
    if metric == ANGULAR_METRIC:
        return trajectory, angular_momentum_error_series(trajectory, problem)

    reference = reference_trajectory(spec, ratio)
    return trajectory, component_error_series(trajectory, reference, metric, problem)
