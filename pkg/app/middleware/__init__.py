from app.middleware.rhs_counter import CountingRhs, counting_problem
from app.middleware.run_logging import RunTimer, timed_run

__all__ = ["CountingRhs", "RunTimer", "counting_problem", "timed_run"]
