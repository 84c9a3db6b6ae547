"""
Energy and state error metrics on stored trajectories.

Hamiltonians are evaluated through the generic scalar interface with the
stored states laid out as lanes, one lane per stored time.
"""

from typing import NamedTuple

import numpy as np

from app.constants.error_codes import ErrorCode
from app.core.exceptions import AppException
from app.models.irkgl.trajectory import Trajectory
from app.models.lanes.state_array import StateArray
from app.models.problems.ode_problem import OdeProblem
from app.services.problems.solar_system_service import (
    STATE_SHAPE,
    SolarSystemParams,
    total_angular_momentum,
    total_momentum,
)

TIME_GRID_RTOL = 1e-12


class ErrorSeries(NamedTuple):
    t: np.ndarray
    values: np.ndarray

    @property
    def max(self) -> float:
        return float(np.max(self.values)) if self.values.size else 0.0


# =========================
# ENERGY
# =========================
def energy_series(trajectory: Trajectory, problem: OdeProblem) -> np.ndarray:
    if problem.hamiltonian is None:
        raise AppException(
            2,
            f"Problem '{problem.label}' has no Hamiltonian",
            ErrorCode.INVALID_CONFIG,
        )
    states = StateArray(np.asarray(trajectory.y, dtype=np.float64).T, problem.shape)
    energies = problem.hamiltonian(states, problem.params)
    return np.broadcast_to(np.asarray(energies, dtype=np.float64), (len(trajectory),)).copy()


def _relative(values: np.ndarray, reference: np.ndarray) -> np.ndarray:
    if np.any(reference == 0):
        raise AppException(
            2,
            "Relative energy error undefined: reference energy is zero",
            ErrorCode.ZERO_ENERGY_REFERENCE,
            details={"index": int(np.argmax(reference == 0))},
        )
    return np.abs((values - reference) / reference)


def local_energy_errors(energies: np.ndarray) -> np.ndarray:
    """|(H_n - H_{n-1}) / H_{n-1}| between consecutive stored states."""
    energies = np.asarray(energies, dtype=np.float64)
    return _relative(energies[1:], energies[:-1])


def local_energy_error_max(trajectory: Trajectory, problem: OdeProblem) -> float:
    if len(trajectory) < 2:
        return 0.0
    return float(np.max(local_energy_errors(energy_series(trajectory, problem))))


def global_energy_errors(energies: np.ndarray) -> np.ndarray:
    energies = np.asarray(energies, dtype=np.float64)
    return _relative(energies, np.full_like(energies, energies[0]))


def global_energy_error_series(trajectory: Trajectory, problem: OdeProblem) -> ErrorSeries:
    return ErrorSeries(trajectory.t, global_energy_errors(energy_series(trajectory, problem)))


# =========================
# STATE ERRORS
# =========================
def check_time_grid(trajectory: Trajectory, reference: Trajectory) -> None:
    if trajectory.t.shape != reference.t.shape or not np.allclose(
        trajectory.t, reference.t, rtol=TIME_GRID_RTOL, atol=0.0
    ):
        raise AppException(
            2,
            "Trajectory and reference are stored at different times",
            ErrorCode.TIME_GRID_MISMATCH,
            details={"points": len(trajectory), "reference_points": len(reference)},
        )


def _select(y: np.ndarray, selector: str, problem: OdeProblem) -> np.ndarray:
    """(n, k) block of stored states picked by ``selector``."""
    n = y.shape[0]
    half = problem.dim // 2

    if selector == "r":
        return y[:, 0:1]
    if selector == "position":
        return y[:, :half]
    if selector == "momentum":
        return y[:, half:]
    if selector.startswith("planet:") and problem.shape == STATE_SHAPE:
        try:
            k = int(selector.split(":", 1)[1])
        except ValueError:
            k = -1
        if 0 <= k < STATE_SHAPE[2]:
            return y.reshape(n, *STATE_SHAPE)[:, 0, :, k]

    raise AppException(
        2,
        f"Unknown selector '{selector}' for problem '{problem.label}'",
        ErrorCode.UNKNOWN_SELECTOR,
        details={"available": list(problem.metadata.get("selectors", ()))},
    )


def component_error_series(
    trajectory: Trajectory,
    reference: Trajectory,
    selector: str,
    problem: OdeProblem,
) -> ErrorSeries:
    """||x_n - x~_n|| / ||x~_n|| for the selected components."""
    check_time_grid(trajectory, reference)
    x = _select(np.asarray(trajectory.y, dtype=np.float64), selector, problem)
    ref = _select(np.asarray(reference.y, dtype=np.float64), selector, problem)
    scale = np.linalg.norm(ref, axis=1)
    diff = np.linalg.norm(x - ref, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(scale > 0, diff / scale, diff)
    return ErrorSeries(trajectory.t, values)


# =========================
# N-BODY INVARIANTS
# =========================
def _solar_params(problem: OdeProblem) -> SolarSystemParams:
    if not isinstance(problem.params, SolarSystemParams):
        raise AppException(
            2,
            f"Momentum invariants are defined for the N-body problem, not '{problem.label}'",
            ErrorCode.UNKNOWN_SELECTOR,
        )
    return problem.params


def momentum_error_series(trajectory: Trajectory, problem: OdeProblem) -> ErrorSeries:
    """||P_n - P_0|| relative to sum_i m_i ||v_i(0)||."""
    params = _solar_params(problem)
    p = total_momentum(np.asarray(trajectory.y, dtype=np.float64), params)
    v0 = np.asarray(trajectory.y[0], dtype=np.float64).reshape(STATE_SHAPE)[1]
    scale = float(np.dot(params.masses, np.linalg.norm(v0, axis=0)))
    return ErrorSeries(trajectory.t, np.linalg.norm(p - p[0], axis=1) / scale)


def angular_momentum_error_series(trajectory: Trajectory, problem: OdeProblem) -> ErrorSeries:
    params = _solar_params(problem)
    l = total_angular_momentum(np.asarray(trajectory.y, dtype=np.float64), params)
    return ErrorSeries(trajectory.t, np.linalg.norm(l - l[0], axis=1) / np.linalg.norm(l[0]))
