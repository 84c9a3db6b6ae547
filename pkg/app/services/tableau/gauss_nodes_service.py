import logging

import mpmath as mp

from app.constants.error_codes import ErrorCode
from app.core.config import NEWTON_MAX_ITERS, TABLEAU_PRECISION
from app.core.exceptions import AppException

logger = logging.getLogger(__name__)

GUARD_DIGITS = 10
MAX_STAGES = 16


def check_precision(precision: int) -> None:
    if precision < 30:
        raise AppException(
            2,
            "Tableau precision must be at least 30 decimal digits",
            ErrorCode.INVALID_CONFIG,
            details={"precision": precision},
        )


def _legendre_and_derivative(n: int, x):
    p = mp.legendre(n, x)
    dp = n * (x * p - mp.legendre(n - 1, x)) / (x * x - 1)
    return p, dp


def gauss_nodes(s: int, precision: int = TABLEAU_PRECISION) -> list:
    """
    Shifted Gauss–Legendre nodes c_i = (1 + x_i) / 2, ascending.

    Newton on P_s from x = cos(pi (4k - 1) / (4s + 2)); a root is accepted
    once |P_s(x)| < 10^(2 - precision).
    """
    if not 1 <= s <= MAX_STAGES:
        raise AppException(
            2,
            f"Stage count must be between 1 and {MAX_STAGES}",
            ErrorCode.UNSUPPORTED_STAGE_COUNT,
            details={"s": s},
        )
    check_precision(precision)

    with mp.workdps(precision + GUARD_DIGITS):
        if s == 1:
            return [mp.mpf(1) / 2]

        tol = mp.mpf(10) ** (2 - precision)
        roots = []
        for k in range(1, s + 1):
            x = mp.cos(mp.pi * (4 * k - 1) / (4 * s + 2))
            for _ in range(NEWTON_MAX_ITERS):
                p, dp = _legendre_and_derivative(s, x)
                if abs(p) < tol:
                    break
                x = x - p / dp
            else:
                raise AppException(
                    1,
                    "Newton iteration on the Legendre polynomial did not converge",
                    ErrorCode.NEWTON_NONCONVERGENCE,
                    details={"s": s, "k": k, "max_iters": NEWTON_MAX_ITERS},
                )
            roots.append(x)

        nodes = sorted((1 + x) / 2 for x in roots)

    logger.debug("Gauss nodes computed", extra={"s": s, "precision": precision})
    return nodes
