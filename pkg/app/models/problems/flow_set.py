from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

# flow(state, t) -> new state; the exact time-t map of one sub-Hamiltonian.
FlowMap = Callable[[np.ndarray, float], np.ndarray]


@dataclass(frozen=True, eq=False)
class FlowSet:
    flows: tuple[FlowMap, ...]
    labels: tuple[str, ...]
    hamiltonians: tuple[Callable[[np.ndarray], float], ...] = ()
    # Flows may act on different variables than the problem state.
    to_flow_vars: Optional[Callable[[np.ndarray], np.ndarray]] = None
    from_flow_vars: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self):
        if len(self.flows) != len(self.labels):
            raise ValueError("each flow needs a label")
        if self.hamiltonians and len(self.hamiltonians) != len(self.flows):
            raise ValueError("sub-Hamiltonians must match the flows one to one")

    def __len__(self) -> int:
        return len(self.flows)

    def enter(self, y: np.ndarray) -> np.ndarray:
        y = np.array(y, dtype=np.float64)
        return y if self.to_flow_vars is None else self.to_flow_vars(y)

    def leave(self, z: np.ndarray) -> np.ndarray:
        return np.array(z) if self.from_flow_vars is None else self.from_flow_vars(z)
