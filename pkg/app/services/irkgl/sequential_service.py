"""
IRKGL16-SEQ: the same iteration with an explicit loop over stages. Each
stage's RHS is evaluated on its own contiguous state vector and the stage
arithmetic follows the lane kernels operation for operation, so both
variants produce identical bits.
"""

import numpy as np

from app.models.lanes.state_array import StateArray
from app.models.problems.ode_problem import OdeProblem
from app.models.tableau.gauss_tableau import GaussTableau
from app.services.irkgl.iteration_service import (
    _buffers,
    ensure_finite,
    require_second_order,
    stage_times,
)


def _stage_update(tableau: GaussTableau, i: int, y: np.ndarray, L: np.ndarray) -> np.ndarray:
    mu = tableau.mu
    dY = L[:, 0] * mu[0][i]
    for j in range(1, tableau.s):
        dY += L[:, j] * mu[j][i]
    return y + dY


def _shaped(x: np.ndarray, shape):
    return x if shape is None else x.reshape(shape)


def sequential_init_guess(
    tableau: GaussTableau,
    y_prev: np.ndarray,
    L_prev: StateArray,
    out: StateArray | None = None,
    has_history: bool = True,
) -> StateArray:
    if out is None:
        out = StateArray.zeros(L_prev.dim, L_prev.lanes, L_prev.shape, L_prev.dtype)
    for i in range(tableau.s):
        guess = y_prev.copy()
        if has_history:
            for j in range(tableau.s):
                guess += L_prev.data[:, j] * tableau.nu[j][i]
        out.data[:, i] = guess
    return out


def sequential_sweep(
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
    t = stage_times(tableau, t_prev, h)
    shape = problem.shape

    for i in range(tableau.s):
        y_i = Y_in.data[:, i].copy()
        f_i = np.empty_like(y_i)
        problem.rhs(_shaped(f_i, shape), _shaped(y_i, shape), problem.params, t[i])
        F.data[:, i] = f_i
    ensure_finite(F, t=t_prev, h=h)

    for i in range(tableau.s):
        L.data[:, i] = h * (tableau.b[i] * F.data[:, i])
    for i in range(tableau.s):
        Y_out.data[:, i] = _stage_update(tableau, i, y_prev, L.data)
    return Y_out, F, L


def sequential_partitioned_sweep(
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
    so = require_second_order(problem)
    d, D = so.d, Y_in.dim
    Y_out, F, L = _buffers(Y_in, Y_out, F, L)
    t = stage_times(tableau, t_prev, h)

    for i in range(tableau.s):
        F.data[:d, i] = Y_in.data[d:, i]
        L.data[:d, i] = h * (tableau.b[i] * F.data[:d, i])
    for i in range(tableau.s):
        Y_out.data[:d, i] = _stage_update(tableau, i, y_prev[:d], L.data[:d])

    for i in range(tableau.s):
        q_i = Y_out.data[:d, i].copy()
        g_i = np.empty_like(q_i)
        so.accel(_shaped(g_i, so.position_shape), _shaped(q_i, so.position_shape), problem.params, t[i])
        F.data[d:, i] = g_i
    ensure_finite(F, slice(d, D), t=t_prev, h=h)

    for i in range(tableau.s):
        L.data[d:, i] = h * (tableau.b[i] * F.data[d:, i])
    for i in range(tableau.s):
        Y_out.data[d:, i] = _stage_update(tableau, i, y_prev[d:], L.data[d:])
    return Y_out, F, L
