from dataclasses import dataclass

import numpy as np

from app.constants.error_codes import ErrorCode
from app.core.exceptions import AppException


def _ulp_close(x: np.ndarray, y: np.ndarray, ulps: int) -> bool:
    spacing = np.spacing(np.maximum(np.abs(x), np.abs(y)))
    return bool(np.all(np.abs(x - y) <= ulps * spacing))


@dataclass(frozen=True, eq=False)
class GaussTableau:
    """
    Working-precision Gauss–Legendre coefficients in the increment form.

    ``mu[i]`` and ``nu[i]`` are lane vectors: column i of the coefficient
    matrix, i.e. ``mu[i][j] == mu_{j,i}``. Stage states are recovered as
    ``Y_j = y + sum_i mu_{j,i} L_i`` with ``L_i = h b_i F_i``.
    """

    s: int
    c: np.ndarray
    b: np.ndarray
    mu: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        for name in ("c", "b", "mu", "nu"):
            getattr(self, name).setflags(write=False)
        self.validate()

    @property
    def order(self) -> int:
        return 2 * self.s

    @property
    def dtype(self) -> np.dtype:
        return self.c.dtype

    @property
    def mu_matrix(self) -> np.ndarray:
        """mu_{i,j} with rows indexing the stage being updated."""
        return self.mu.T

    # -------------------------
    # VALIDATION
    # -------------------------
    def validate(self) -> None:
        s = self.s
        if self.c.shape != (s,) or self.b.shape != (s,) or self.mu.shape != (s, s) or self.nu.shape != (s, s):
            raise AppException(1, "Tableau arrays have inconsistent shapes", ErrorCode.TABLEAU_INVALID)

        m = self.mu_matrix
        one = self.dtype.type(1)
        for i in range(s):
            if m[i, i] != self.dtype.type(0.5):
                raise AppException(
                    1, "Diagonal mu must be exactly 1/2", ErrorCode.TABLEAU_INVALID, details={"i": i}
                )
            for j in range(i + 1, s):
                if m[i, j] + m[j, i] != one:
                    raise AppException(
                        1,
                        "Symplectic rounding identity violated",
                        ErrorCode.TABLEAU_INVALID,
                        details={"i": i, "j": j},
                    )

        if not np.all(np.diff(self.c) > 0) or self.c[0] <= 0 or self.c[-1] >= 1:
            raise AppException(1, "Nodes must increase strictly inside (0, 1)", ErrorCode.TABLEAU_INVALID)
        if not _ulp_close(self.c + self.c[::-1], np.ones(s, dtype=self.dtype), 2):
            raise AppException(1, "Nodes are not symmetric about 1/2", ErrorCode.TABLEAU_INVALID)
        if not _ulp_close(self.b, self.b[::-1], 2):
            raise AppException(1, "Weights are not symmetric", ErrorCode.TABLEAU_INVALID)

        total = self.b[0]
        for w in self.b[1:]:
            total = total + w
        if not _ulp_close(np.array([total]), np.array([one]), 4):
            raise AppException(
                1, "Weights do not sum to one", ErrorCode.TABLEAU_INVALID, details={"sum": float(total)}
            )
