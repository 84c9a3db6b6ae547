"""Helpers shared by the generic RHS definitions and the separable flows."""

import numpy as np
from scipy.optimize import bisect

from app.constants.error_codes import ErrorCode
from app.core.exceptions import AppException
from app.models.lanes.state_array import StateArray
from app.models.problems.flow_set import FlowSet


def split_halves(y, d: int, shape=None):
    """(positions, velocities) views of a lane or scalar state."""
    if isinstance(y, StateArray):
        return y.block(0, d, shape), y.block(d, 2 * d, shape)
    flat = y.reshape(-1)
    q, v = flat[:d], flat[d:]
    if shape is not None:
        q, v = q.reshape(shape), v.reshape(shape)
    return q, v


def positive_energy_root(energy_gap, label: str, upper: float = 1.0) -> float:
    """
    Smallest-bracket positive root of ``energy_gap`` (negative at 0,
    increasing), bisected to full double precision.
    """
    if not energy_gap(0.0) < 0.0:
        raise AppException(
            2,
            f"No positive momentum reaches the requested energy for {label}",
            ErrorCode.NO_ENERGY_ROOT,
            details={"gap_at_zero": float(energy_gap(0.0))},
        )
    for _ in range(60):
        if energy_gap(upper) > 0.0:
            break
        upper *= 2.0
    else:
        raise AppException(
            2, f"Could not bracket the energy root for {label}", ErrorCode.NO_ENERGY_ROOT
        )
    return float(
        bisect(energy_gap, 0.0, upper, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=400)
    )


def separable_flowset(accel, d: int, params, position_shape, kinetic, potential) -> FlowSet:
    """
    Drift / kick flows of H = T(v) + V(q) for an autonomous second-order
    problem with unit metric (dq/dt = v).
    """

    def drift(y: np.ndarray, t: float) -> np.ndarray:
        z = y.copy()
        z[:d] = y[:d] + t * y[d:]
        return z

    def kick(y: np.ndarray, t: float) -> np.ndarray:
        z = y.copy()
        g = np.empty(d)
        q = y[:d]
        if position_shape is not None:
            accel(g.reshape(position_shape), q.reshape(position_shape), params, 0.0)
        else:
            accel(g, q, params, 0.0)
        z[d:] = y[d:] + t * g
        return z

    return FlowSet(
        flows=(drift, kick),
        labels=("kinetic", "potential"),
        hamiltonians=(kinetic, potential),
    )
