"""
Lane-vector operations.

A lane vector is a 1-D ndarray of length s (one lane per RK stage). numpy
ufuncs apply the scalar IEEE operation lane by lane, so problem code written
against plain scalars runs unchanged on lane vectors.
"""

import math
from fractions import Fraction
from typing import Callable

import numpy as np

from app.constants.error_codes import ErrorCode
from app.core.exceptions import AppException
from app.models.lanes.state_array import StateArray

LaneVector = np.ndarray


def _fma_scalar(a: float, b: float, c: float) -> float:
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(c)):
        return a * b + c
    return float(Fraction(a) * Fraction(b) + Fraction(c))


_scalar_fma: Callable[[float, float, float], float] = getattr(math, "fma", _fma_scalar)


def _lane_fma(a: LaneVector, b: LaneVector, c: LaneVector) -> LaneVector:
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        out[i] = _scalar_fma(float(a[i]), float(b[i]), float(c[i]))
    return out


_UNARY_OPS = {
    "sin": np.sin,
    "cos": np.cos,
    "sqrt": np.sqrt,
    "abs": np.abs,
    "neg": np.negative,
}

_BINARY_OPS = {
    "+": np.add,
    "-": np.subtract,
    "*": np.multiply,
    "/": np.divide,
    "pow": np.power,
}


# =========================
# CONSTRUCTION
# =========================
def lane_broadcast(x: float, lanes: int, dtype=np.float64) -> LaneVector:
    return np.full(lanes, x, dtype=dtype)


# =========================
# ELEMENTWISE
# =========================
def lane_elementwise(op: str, a: LaneVector, b: LaneVector | None = None, c: LaneVector | None = None) -> LaneVector:
    """Apply ``op`` lane by lane. IEEE NaN/Inf propagate per lane."""
    operands = [v for v in (a, b, c) if v is not None]
    if len({v.shape[0] for v in operands}) > 1:
        raise AppException(
            2,
            "Lane vectors must have equal width",
            ErrorCode.LANE_WIDTH_MISMATCH,
            details={"widths": [v.shape[0] for v in operands]},
        )

    with np.errstate(all="ignore"):
        if op == "fma":
            if b is None or c is None:
                raise AppException(2, "fma needs three operands", ErrorCode.UNSUPPORTED_LANE_OP)
            return _lane_fma(a, b, c)
        if op in _UNARY_OPS:
            return _UNARY_OPS[op](a)
        if op in _BINARY_OPS:
            if b is None:
                raise AppException(2, f"'{op}' needs two operands", ErrorCode.UNSUPPORTED_LANE_OP)
            return _BINARY_OPS[op](a, b)

    raise AppException(
        2,
        f"Unsupported lane operation '{op}'",
        ErrorCode.UNSUPPORTED_LANE_OP,
        details={"supported": sorted([*_UNARY_OPS, *_BINARY_OPS, "fma"])},
    )


# =========================
# REDUCTIONS
# =========================
def lane_sum(v: LaneVector):
    """Left-to-right sum v_1 + v_2 + ... + v_s (np.sum is pairwise)."""
    acc = v[0]
    for x in v[1:]:
        acc = acc + x
    return acc


def lane_sum_rows(data: np.ndarray) -> np.ndarray:
    """lane_sum applied to every component of a (D, s) block, same order."""
    acc = data[:, 0].copy()
    for i in range(1, data.shape[1]):
        acc += data[:, i]
    return acc


def lane_max_abs(v: LaneVector):
    """max_i |v_i|; a NaN lane makes the result NaN."""
    return np.max(np.abs(v))


# =========================
# STATE ACCESS
# =========================
def state_get(Y: StateArray, index) -> LaneVector:
    return Y[index]


def state_set(Y: StateArray, index, v: LaneVector) -> None:
    if np.shape(v) != (Y.lanes,):
        raise AppException(
            2,
            "Lane vector width does not match the state array",
            ErrorCode.LANE_WIDTH_MISMATCH,
            details={"expected": Y.lanes, "got": list(np.shape(v))},
        )
    Y[index] = v
