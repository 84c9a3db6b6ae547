from enum import Enum

import numpy as np


class WorkingPrecision(str, Enum):
    float64 = "float64"
    float32 = "float32"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(self.value)
