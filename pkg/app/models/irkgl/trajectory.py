from dataclasses import dataclass, field

import numpy as np


@dataclass
class Trajectory:
    """Stored states of one constant-step run plus its accounting."""

    method: str
    problem: str
    h: float
    t: np.ndarray
    y: np.ndarray
    steps: int
    rhs_evals: int = 0
    wall_seconds: float = 0.0
    iterations: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    flags: list = field(default_factory=list)
    capped_steps: list = field(default_factory=list)

    @property
    def total_iters(self) -> int:
        return int(self.iterations.sum())

    @property
    def final_state(self) -> np.ndarray:
        return self.y[-1]

    def __len__(self) -> int:
        return self.t.shape[0]
