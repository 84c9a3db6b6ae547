"""
Order conditions of symmetric compositions of a symmetric second-order
method. With tau_i = sum_{j<i} g_j + g_i/2 - 1/2, a palindromic composition
has order 6 when

    sum g = 1, sum g^3 = 0, sum g^5 = 0, sum g^3 tau^2 = 0

and order 8 when additionally

    sum g^7 = 0, sum g^5 tau^2 = 0, sum g^3 tau^4 = 0,
    sum_{i<j} g_i^3 g_j^3 (tau_i - tau_j) = 0.

Order 4 only needs the first two.
"""

from typing import Sequence

import mpmath as mp

from app.constants.error_codes import ErrorCode
from app.core.exceptions import AppException

MAX_CHECKED_ORDER = 8
_CONDITIONS_BY_ORDER = {2: 1, 4: 2, 6: 4, 8: 8}


def _taus(g: list) -> list:
    taus, acc = [], mp.mpf(0)
    for x in g:
        taus.append(acc + x / 2 - mp.mpf(1) / 2)
        acc += x
    return taus


def composition_order_residuals(gammas: Sequence, order: int, dps: int = 30) -> list:
    """
    Residuals of the conditions needed for ``order`` (capped at order 8),
    evaluated with ``dps`` decimal digits.
    """
    if order < 2 or order % 2:
        raise AppException(
            2, "Composition order must be even and >= 2", ErrorCode.INVALID_CONFIG, details={"order": order}
        )
    n = _CONDITIONS_BY_ORDER[min(order, MAX_CHECKED_ORDER)]

    with mp.workdps(dps):
        g = [mp.mpf(x) for x in gammas]
        tau = _taus(g)
        residuals = [
            mp.fsum(g) - 1,
            mp.fsum(x**3 for x in g),
            mp.fsum(x**5 for x in g),
            mp.fsum(x**3 * t**2 for x, t in zip(g, tau)),
            mp.fsum(x**7 for x in g),
            mp.fsum(x**5 * t**2 for x, t in zip(g, tau)),
            mp.fsum(x**3 * t**4 for x, t in zip(g, tau)),
            mp.fsum(
                g[i] ** 3 * g[j] ** 3 * (tau[i] - tau[j])
                for i in range(len(g))
                for j in range(i + 1, len(g))
            ),
        ]
        return [float(r) for r in residuals[:n]]


def max_order_residual(gammas: Sequence, order: int) -> float:
    return max(abs(r) for r in composition_order_residuals(gammas, order))
