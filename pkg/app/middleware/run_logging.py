import time
import logging
from contextlib import contextmanager
from dataclasses import dataclass

logger = logging.getLogger("run")

RUN_FIELDS = ("method", "problem", "h", "steps", "rhs_evals", "iters", "iters_per_step", "capped", "wall_ms")


class RunFieldsFilter(logging.Filter):
    """Fills the ``run`` formatter fields for records logged without them."""

    def filter(self, record: logging.LogRecord) -> bool:
        for name in RUN_FIELDS:
            if not hasattr(record, name):
                setattr(record, name, "-")
        return True


@dataclass
class RunTimer:
    method: str
    problem: str
    h: float
    steps: int = 0
    rhs_evals: int = 0
    # fixed-point iterations summed over steps; 0 for explicit schemes
    total_iters: int = 0
    capped_steps: int = 0
    wall_seconds: float = 0.0

    @property
    def iters_per_step(self) -> float:
        return self.total_iters / self.steps if self.steps else 0.0


@contextmanager
def timed_run(method: str, problem: str, h: float):
    """Time the enclosed integration and emit one line on the ``run`` logger."""
    timer = RunTimer(method=method, problem=problem, h=h)
    start_time = time.perf_counter()

    yield timer

    timer.wall_seconds = time.perf_counter() - start_time

    logger.info(
        "",
        extra={
            "method": timer.method,
            "problem": timer.problem,
            "h": f"{timer.h:.6g}",
            "steps": timer.steps,
            "rhs_evals": timer.rhs_evals,
            "iters": timer.total_iters,
            "iters_per_step": round(timer.iters_per_step, 2),
            "capped": timer.capped_steps,
            "wall_ms": round(timer.wall_seconds * 1000, 2),
        },
    )
