from dataclasses import dataclass, field

import numpy as np

from app.models.lanes.state_array import StateArray


@dataclass
class StepWorkspace:
    """Per-run buffers of the fixed-point iteration; all arrays share D and s."""

    Y: StateArray
    Y_next: StateArray
    F: StateArray
    L: StateArray
    L_prev: StateArray
    has_history: bool = False
    delta_history: list = field(default_factory=list)
    iter_count: int = 0

    @classmethod
    def create(cls, dim: int, lanes: int, shape=None, dtype=np.float64) -> "StepWorkspace":
        def buffer() -> StateArray:
            return StateArray.zeros(dim, lanes, shape, dtype)

        return cls(Y=buffer(), Y_next=buffer(), F=buffer(), L=buffer(), L_prev=buffer())

    def begin_step(self) -> None:
        self.delta_history.clear()
        self.iter_count = 0

    def swap_iterates(self) -> None:
        self.Y, self.Y_next = self.Y_next, self.Y

    def commit_increments(self) -> None:
        self.L_prev.data[...] = self.L.data
        self.has_history = True
