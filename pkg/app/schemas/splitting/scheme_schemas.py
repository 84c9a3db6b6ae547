import math
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

SUM_TOLERANCE = 1e-15


def _check_sum(values: List[float], label: str) -> None:
    total = math.fsum(values)
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise ValueError(f"{label} must sum to 1, got {total!r}")


class CompositionScheme(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    order: int = Field(ge=2)
    gammas: List[float] = Field(min_length=1)
    source: Optional[str] = None

    @field_validator("gammas")
    @classmethod
    def palindromic_and_consistent(cls, v):
        if list(v) != list(reversed(v)):
            raise ValueError("gammas must be palindromic")
        _check_sum(v, "gammas")
        return v

    @property
    def stages(self) -> int:
        return len(self.gammas)


class ABSplittingScheme(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    order: int = Field(ge=2)
    a: List[float] = Field(min_length=2)
    b: List[float] = Field(min_length=1)
    source: Optional[str] = None

    @model_validator(mode="after")
    def check_coefficients(self):
        if len(self.a) != len(self.b) + 1:
            raise ValueError("a needs exactly one more coefficient than b")
        _check_sum(self.a, "a")
        _check_sum(self.b, "b")
        return self

    @property
    def stages(self) -> int:
        return len(self.b)

    @property
    def symmetric(self) -> bool:
        return self.a == self.a[::-1] and self.b == self.b[::-1]
