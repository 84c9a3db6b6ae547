from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import MAX_ITERS, TIMING_REPEAT
from app.models.enums.iteration_mode import IterationMode
from app.models.enums.working_precision import WorkingPrecision
from app.schemas.irkgl.integrator_schemas import IntegratorConfig


class RunSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    problem: str
    problem_params: Dict[str, Any] = Field(default_factory=dict)
    method: str
    h: float = Field(gt=0)
    t0: float = 0.0
    tf: float
    save_every: int = Field(default=1, ge=1)
    out: Optional[Path] = None
    repeat: int = Field(default=TIMING_REPEAT, ge=1)
    mode: IterationMode = IterationMode.first_order
    max_iters: int = Field(default=MAX_ITERS, ge=3)
    precision: WorkingPrecision = WorkingPrecision.float64

    @model_validator(mode="after")
    def check_interval(self):
        if self.tf < self.t0:
            raise ValueError("tf must not precede t0")
        return self

    def integrator_config(self) -> IntegratorConfig:
        return IntegratorConfig(
            h=self.h,
            t0=self.t0,
            tf=self.tf,
            mode=self.mode,
            max_iters=self.max_iters,
            save_every=self.save_every,
            precision=self.precision,
        )


class RunReport(BaseModel):
    method: str
    problem: str
    h: float
    steps: int
    total_rhs_evals: int
    total_iters: int
    wall_seconds: float
    flags: List[str] = Field(default_factory=list)
    dh_loc_max: Optional[float] = None
    dh_glob_max: Optional[float] = None
    final_state: List[float] = Field(default_factory=list)


SWEEP_COLUMNS = (
    "method",
    "h",
    "steps",
    "rhs_evals",
    "total_iters",
    "wall_seconds",
    "dh_loc_max",
    "dh_glob_max",
    "final_error",
    "flags",
)


class WorkPrecisionRecord(BaseModel):
    method: str
    h: float = Field(gt=0)
    steps: int = Field(ge=0)
    rhs_evals: int = Field(ge=0)
    total_iters: int = Field(ge=0)
    wall_seconds: float = Field(ge=0)
    dh_loc_max: float
    dh_glob_max: float
    final_error: Optional[float] = None
    flags: List[str] = Field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(flag.startswith("error") for flag in self.flags)
