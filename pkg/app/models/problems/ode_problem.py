from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from app.models.problems.flow_set import FlowSet

# rhs(dy, y, params, t): writes f(t, y) into dy. Written against the scalar
# interface only, so y may be a float ndarray or a StateArray of lane vectors
# (t is then a lane vector as well).
RhsFn = Callable[[Any, Any, Any, Any], None]


@dataclass(frozen=True, eq=False)
class SecondOrderStructure:
    """dq/dt = v, dv/dt = accel(q, t); positions are components 0..d-1."""

    d: int
    accel: RhsFn  # accel(dv, q, params, t)
    position_shape: Optional[tuple[int, ...]] = None


@dataclass(frozen=True, eq=False)
class OdeProblem:
    label: str
    dim: int
    rhs: RhsFn
    params: Any
    y0: np.ndarray
    hamiltonian: Optional[Callable[[Any, Any], Any]] = None
    second_order: Optional[SecondOrderStructure] = None
    flows: Optional[FlowSet] = None
    shape: Optional[tuple[int, ...]] = None
    lane_rhs: Optional[RhsFn] = None
    admissible: Optional[Callable[[np.ndarray], bool]] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        y0 = np.asarray(self.y0, dtype=np.float64).reshape(-1)
        if y0.shape[0] != self.dim:
            raise ValueError(f"y0 has {y0.shape[0]} components, expected {self.dim}")
        y0.setflags(write=False)
        object.__setattr__(self, "y0", y0)
        if self.shape is not None and int(np.prod(self.shape)) != self.dim:
            raise ValueError(f"shape {self.shape} does not match dimension {self.dim}")
        if self.second_order is not None and 2 * self.second_order.d != self.dim:
            raise ValueError("second-order structure needs dim == 2 d")

    # -------------------------
    # SCALAR CONVENIENCE
    # -------------------------
    def shaped(self, y: np.ndarray) -> np.ndarray:
        """View of a flat state in the problem's index shape."""
        return y if self.shape is None else y.reshape(self.shape)

    def evaluate_rhs(self, t: float, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=np.float64)
        dy = np.empty_like(y)
        self.rhs(self.shaped(dy), self.shaped(y), self.params, t)
        return dy

    def energy(self, y: np.ndarray) -> float:
        if self.hamiltonian is None:
            raise ValueError(f"problem '{self.label}' has no Hamiltonian")
        return float(self.hamiltonian(self.shaped(np.asarray(y, dtype=np.float64)), self.params))
