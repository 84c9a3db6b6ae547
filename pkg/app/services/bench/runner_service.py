import logging

import numpy as np

from app.constants.error_codes import ErrorCode
from app.constants.method_ids import (
    IMPLICIT_METHODS,
    IRKGL16_SEQ,
    IRKGL16_STAGES,
    SPLITTING_METHODS,
    UNBUNDLED_METHODS,
)
from app.core.exceptions import AppException
from app.models.irkgl.trajectory import Trajectory
from app.models.problems.ode_problem import OdeProblem
from app.schemas.bench.run_schemas import RunReport, RunSpec
from app.schemas.irkgl.integrator_schemas import IntegratorConfig
from app.services.bench.metrics_service import energy_series, global_energy_errors, local_energy_errors
from app.services.irkgl.integrate_service import integrate
from app.services.problems.problem_registry_service import get_problem
from app.services.splitting.integrate_service import integrate_splitting
from app.services.tableau.tableau_service import build_tableau

logger = logging.getLogger(__name__)

ALL_METHODS = IMPLICIT_METHODS + SPLITTING_METHODS + UNBUNDLED_METHODS


def check_method(method: str) -> None:
    if method not in ALL_METHODS:
        raise AppException(
            2,
            f"Unknown method '{method}'",
            ErrorCode.UNKNOWN_METHOD,
            details={"available": list(ALL_METHODS)},
        )


def run_method(problem: OdeProblem, method: str, config: IntegratorConfig) -> Trajectory:
    check_method(method)
    if method in IMPLICIT_METHODS:
        tableau = build_tableau(IRKGL16_STAGES, dtype=config.precision.value)
        return integrate(problem, tableau, config, sequential=method == IRKGL16_SEQ)
    return integrate_splitting(problem, method, config)


def timed_method(
    problem: OdeProblem,
    method: str,
    config: IntegratorConfig,
    repeat: int = 1,
    warmup: bool = False,
) -> Trajectory:
    """
    Runs the method ``repeat`` times (after an optional untimed warm-up) and
    returns the last trajectory carrying the minimum wall time.
    """
    if warmup:
        run_method(problem, method, config)
    best = None
    fastest = float("inf")
    for _ in range(repeat):
        trajectory = run_method(problem, method, config)
        fastest = min(fastest, trajectory.wall_seconds)
        best = trajectory
    best.wall_seconds = fastest
    return best


def build_report(trajectory: Trajectory, problem: OdeProblem) -> RunReport:
    dh_loc = dh_glob = None
    if problem.hamiltonian is not None and len(trajectory) > 1:
        energies = energy_series(trajectory, problem)
        dh_loc = float(np.max(local_energy_errors(energies)))
        dh_glob = float(np.max(global_energy_errors(energies)))
    return RunReport(
        method=trajectory.method,
        problem=trajectory.problem,
        h=trajectory.h,
        steps=trajectory.steps,
        total_rhs_evals=trajectory.rhs_evals,
        total_iters=trajectory.total_iters,
        wall_seconds=trajectory.wall_seconds,
        flags=list(trajectory.flags),
        dh_loc_max=dh_loc,
        dh_glob_max=dh_glob,
        final_state=[float(v) for v in trajectory.final_state],
    )


def run_spec(spec: RunSpec) -> tuple[Trajectory, RunReport]:
    check_method(spec.method)
    problem = get_problem(spec.problem, spec.problem_params)
    trajectory = timed_method(problem, spec.method, spec.integrator_config(), spec.repeat)
    report = build_report(trajectory, problem)
    logger.info(
        "Run finished",
        extra={"method": spec.method, "problem": spec.problem, "steps": report.steps},
    )
    return trajectory, report
