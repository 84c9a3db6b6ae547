from typing import Sequence

import mpmath as mp
import numpy as np

from app.constants.error_codes import ErrorCode
from app.core.config import TABLEAU_PRECISION
from app.core.exceptions import AppException
from app.services.tableau.gauss_nodes_service import GUARD_DIGITS, check_precision


# =========================
# VANDERMONDE
# =========================
def _check_distinct(nodes: Sequence) -> None:
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if nodes[i] == nodes[j]:
                raise AppException(
                    2,
                    "Vandermonde system is singular: duplicate nodes",
                    ErrorCode.SINGULAR_SYSTEM,
                    details={"i": i, "j": j},
                )


def bjorck_pereyra_solve(nodes: Sequence, rhs: Sequence) -> list:
    """
    Solve sum_j z_j x_j^k = f_k, k = 0..n (Björck–Pereyra, primal form).

    Runs in the caller's mpmath precision; inputs are not modified.
    """
    _check_distinct(nodes)
    x = list(nodes)
    z = [mp.mpf(v) for v in rhs]
    n = len(x) - 1

    for k in range(n):
        for i in range(n, k, -1):
            z[i] = z[i] - x[k] * z[i - 1]
    for k in range(n - 1, -1, -1):
        for i in range(k + 1, n + 1):
            z[i] = z[i] / (x[i] - x[i - k - 1])
        for i in range(k, n):
            z[i] = z[i] - z[i + 1]
    return z


# =========================
# COLLOCATION COEFFICIENTS
# =========================
def collocation_coeffs(nodes: Sequence, precision: int = TABLEAU_PRECISION):
    """
    High-precision (b, a) for collocation on ``nodes``:
    sum_j b_j c_j^(k-1) = 1/k and sum_j a_ij c_j^(k-1) = c_i^k / k, k = 1..s.
    """
    check_precision(precision)
    s = len(nodes)
    with mp.workdps(precision + GUARD_DIGITS):
        c = [mp.mpf(v) for v in nodes]
        b = bjorck_pereyra_solve(c, [mp.mpf(1) / k for k in range(1, s + 1)])
        a = [
            bjorck_pereyra_solve(c, [c[i] ** k / k for k in range(1, s + 1)])
            for i in range(s)
        ]
    return b, a


def order_condition_residual(nodes: Sequence, b: Sequence, a: Sequence, precision: int = TABLEAU_PRECISION):
    """Largest |residual| over the simplifying conditions B(s) and C(s)."""
    s = len(nodes)
    worst = mp.mpf(0)
    with mp.workdps(precision + GUARD_DIGITS):
        for k in range(1, s + 1):
            worst = max(worst, abs(mp.fsum(b[j] * nodes[j] ** (k - 1) for j in range(s)) - mp.mpf(1) / k))
            for i in range(s):
                lhs = mp.fsum(a[i][j] * nodes[j] ** (k - 1) for j in range(s))
                worst = max(worst, abs(lhs - nodes[i] ** k / k))
    return worst


def symplecticity_residual(b: Sequence, a: Sequence, precision: int = TABLEAU_PRECISION):
    """max |b_i a_ij + b_j a_ji - b_i b_j|."""
    s = len(b)
    worst = mp.mpf(0)
    with mp.workdps(precision + GUARD_DIGITS):
        for i in range(s):
            for j in range(s):
                worst = max(worst, abs(b[i] * a[i][j] + b[j] * a[j][i] - b[i] * b[j]))
    return worst


# =========================
# ROUNDING TO WORKING PRECISION
# =========================
def round_to_working(x, dtype=np.float64):
    """Correctly rounded conversion of an mpf to ``dtype``."""
    dtype = np.dtype(dtype)
    bits = np.finfo(dtype).nmant + 1
    with mp.workprec(bits):
        r = +mp.mpf(x)
    return dtype.type(float(r))


def mu_from(a: Sequence, b: Sequence, dtype=np.float64, precision: int = TABLEAU_PRECISION) -> np.ndarray:
    """
    Symplectically rounded mu_ij = a_ij / b_j, returned as lane columns
    (``out[i][j] == mu_{j,i}``).

    The strictly lower triangle is rounded from the exact ratio; the upper
    triangle is 1 - lower in working precision; the diagonal is 1/2.
    """
    dtype = np.dtype(dtype)
    s = len(b)
    m = np.empty((s, s), dtype=dtype)
    one = dtype.type(1)
    with mp.workdps(precision + GUARD_DIGITS):
        for i in range(s):
            m[i, i] = dtype.type(0.5)
            for j in range(i + 1, s):
                m[j, i] = round_to_working(a[j][i] / b[i], dtype)
                m[i, j] = one - m[j, i]
    return np.ascontiguousarray(m.T)


def nu_from(nodes: Sequence, precision: int = TABLEAU_PRECISION, dtype=np.float64) -> np.ndarray:
    """
    Extrapolation coefficients for the initial guess, as lane columns.

    Row i of nu_hat solves sum_j nu_hat_ij (c_j - 1)^(k-1) = c_i^k / k; the
    increments L_j already carry h b_j, so nu_ij = nu_hat_ij / b_j.
    """
    check_precision(precision)
    dtype = np.dtype(dtype)
    s = len(nodes)
    out = np.empty((s, s), dtype=dtype)
    with mp.workdps(precision + GUARD_DIGITS):
        c = [mp.mpf(v) for v in nodes]
        shifted = [cj - 1 for cj in c]
        b = bjorck_pereyra_solve(c, [mp.mpf(1) / k for k in range(1, s + 1)])
        for i in range(s):
            nu_hat = bjorck_pereyra_solve(shifted, [c[i] ** k / k for k in range(1, s + 1)])
            for j in range(s):
                out[j, i] = round_to_working(nu_hat[j] / b[j], dtype)
    return out
