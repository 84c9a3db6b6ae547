"""
Fixed-point iteration for the Gauss–Legendre stage equations in increment
form. Every lane holds one stage; one sweep evaluates the RHS once on all
lanes and then updates each component with lane arithmetic.
"""

import logging

import numpy as np

from app.constants.error_codes import ErrorCode
from app.core.exceptions import AppException
from app.models.lanes.state_array import StateArray
from app.models.problems.ode_problem import OdeProblem
from app.models.tableau.gauss_tableau import GaussTableau

logger = logging.getLogger(__name__)


# =========================
# SHARED LANE ARITHMETIC
# =========================
def stage_times(tableau: GaussTableau, t_prev: float, h: float) -> np.ndarray:
    return t_prev + h * tableau.c


def weighted_increments(tableau: GaussTableau, h: float, F: np.ndarray, out: np.ndarray) -> None:
    """L = h (b o F) on a (rows, s) block."""
    np.multiply(F, tableau.b[None, :], out=out)
    out *= h


def stage_update(tableau: GaussTableau, y: np.ndarray, L: np.ndarray, out: np.ndarray) -> None:
    """Y = y + sum_i mu_i L_i, accumulated i = 1..s."""
    s = tableau.s
    dY = L[:, 0:1] * tableau.mu[0][None, :]
    for i in range(1, s):
        dY += L[:, i : i + 1] * tableau.mu[i][None, :]
    np.add(y[:, None], dY, out=out)


def ensure_finite(F: StateArray, rows: slice = slice(None), **details) -> None:
    if not np.all(np.isfinite(F.data[rows])):
        logger.error("Non-finite stage derivative", extra=details)
        raise AppException(
            3,
            "Numerical divergence: non-finite RHS value in a stage",
            ErrorCode.NUMERICAL_DIVERGENCE,
            details=details,
        )


def require_second_order(problem: OdeProblem):
    if problem.second_order is None:
        raise AppException(
            2,
            f"Problem '{problem.label}' has no second-order structure",
            ErrorCode.NOT_SECOND_ORDER,
        )
    return problem.second_order


def _buffers(Y_in: StateArray, Y_out, F, L):
    def like():
        return StateArray.zeros(Y_in.dim, Y_in.lanes, Y_in.shape, Y_in.dtype)

    return (Y_out if Y_out is not None else like(), F if F is not None else like(), L if L is not None else like())


# =========================
# INITIAL GUESS
# =========================
def init_guess(
    tableau: GaussTableau,
    y_prev: np.ndarray,
    L_prev: StateArray,
    out: StateArray | None = None,
    has_history: bool = True,
) -> StateArray:
    """
    Y^[0] = y_prev + sum_j nu_j L_prev_j. Without history every lane of
    component l is y_prev[l].
    """
    if out is None:
        out = StateArray.zeros(L_prev.dim, L_prev.lanes, L_prev.shape, L_prev.dtype)
    out.data[...] = y_prev[:, None]
    if not has_history:
        return out
    for j in range(tableau.s):
        out.data += L_prev.data[:, j : j + 1] * tableau.nu[j][None, :]
    return out


# =========================
# SWEEPS
# =========================
def fixed_point_sweep(
    problem: OdeProblem,
    tableau: GaussTableau,
    t_prev: float,
    h: float,
    y_prev: np.ndarray,
    Y_in: StateArray,
    Y_out: StateArray | None = None,
    F: StateArray | None = None,
    L: StateArray | None = None,
):
    Y_out, F, L = _buffers(Y_in, Y_out, F, L)
    rhs = problem.lane_rhs or problem.rhs

    rhs(F, Y_in, problem.params, stage_times(tableau, t_prev, h))
    ensure_finite(F, t=t_prev, h=h)

    weighted_increments(tableau, h, F.data, L.data)
    stage_update(tableau, y_prev, L.data, Y_out.data)
    return Y_out, F, L


def partitioned_sweep(
    problem: OdeProblem,
    tableau: GaussTableau,
    t_prev: float,
    h: float,
    y_prev: np.ndarray,
    Y_in: StateArray,
    Y_out: StateArray | None = None,
    F: StateArray | None = None,
    L: StateArray | None = None,
):
    """
    Positions first from the incoming velocity lanes, then one acceleration
    evaluation at the new positions, then velocities.
    """
    so = require_second_order(problem)
    d, D = so.d, Y_in.dim
    Y_out, F, L = _buffers(Y_in, Y_out, F, L)
    q, v = slice(0, d), slice(d, D)

    F.data[q] = Y_in.data[v]
    weighted_increments(tableau, h, F.data[q], L.data[q])
    stage_update(tableau, y_prev[q], L.data[q], Y_out.data[q])

    so.accel(
        F.block(d, D, so.position_shape),
        Y_out.block(0, d, so.position_shape),
        problem.params,
        stage_times(tableau, t_prev, h),
    )
    ensure_finite(F, v, t=t_prev, h=h)

    weighted_increments(tableau, h, F.data[v], L.data[v])
    stage_update(tableau, y_prev[v], L.data[v], Y_out.data[v])
    return Y_out, F, L


# =========================
# STOPPING CRITERION
# =========================
def component_deltas(Y_new: StateArray, Y_old: StateArray, rows: slice = slice(None)) -> np.ndarray:
    """max over lanes of |Y_new - Y_old| per component."""
    return np.max(np.abs(Y_new.data[rows] - Y_old.data[rows]), axis=1)


def stop_check(delta_history, k: int) -> bool:
    """
    Stop after iteration k when, for every component, either the last
    difference is exactly zero or the differences have stopped decreasing:
    min(delta[1..k-2]) <= min(delta[k-1], delta[k]).
    """
    if k < 1:
        return False
    history = np.asarray(delta_history[:k], dtype=np.float64)
    if history.ndim == 1:
        history = history[:, None]
    last = history[k - 1]
    settled = last == 0
    if k >= 3:
        earlier = history[: k - 2].min(axis=0)
        recent = np.minimum(history[k - 2], last)
        settled |= earlier <= recent
    return bool(np.all(settled))
