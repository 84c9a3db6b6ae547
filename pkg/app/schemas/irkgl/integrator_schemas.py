from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import MAX_ITERS, WORKING_PRECISION
from app.models.enums.iteration_mode import IterationMode
from app.models.enums.working_precision import WorkingPrecision


class IntegratorConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    h: float = Field(gt=0)
    t0: float = 0.0
    tf: float
    mode: IterationMode = IterationMode.first_order
    max_iters: int = Field(default=MAX_ITERS, ge=3)
    save_every: int = Field(default=1, ge=1)
    precision: WorkingPrecision = WorkingPrecision(WORKING_PRECISION)

    @model_validator(mode="after")
    def check_interval(self):
        if self.tf < self.t0:
            raise ValueError("tf must not precede t0")
        return self

    @property
    def n_steps(self) -> int:
        if self.tf == self.t0:
            return 0
        # intervals shorter than h/2 still take one (shortened) step
        return max(1, int(round((self.tf - self.t0) / self.h)))
