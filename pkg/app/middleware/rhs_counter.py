import dataclasses

from app.models.lanes.state_array import StateArray
from app.models.problems.ode_problem import OdeProblem


class CountingRhs:
    """
    Wraps an RHS (or acceleration) callable and counts stage evaluations:
    a call on a StateArray counts one per lane, a scalar call counts one.
    """

    def __init__(self, fn):
        self.fn = fn
        self.count = 0

    def __call__(self, dy, y, params, t):
        self.count += y.lanes if isinstance(y, StateArray) else 1
        return self.fn(dy, y, params, t)


def counting_problem(problem: OdeProblem) -> tuple[OdeProblem, CountingRhs]:
    """
    Copy of ``problem`` whose rhs, lane_rhs and second-order acceleration all
    feed one shared counter. Splitting flows are left untouched.
    """
    counter = CountingRhs(problem.rhs)
    changes = {"rhs": counter}

    if problem.lane_rhs is not None:
        lane_counter = CountingRhs(problem.lane_rhs)
        changes["lane_rhs"] = _shared(lane_counter, counter)

    if problem.second_order is not None:
        accel_counter = CountingRhs(problem.second_order.accel)
        changes["second_order"] = dataclasses.replace(
            problem.second_order, accel=_shared(accel_counter, counter)
        )

    return dataclasses.replace(problem, **changes), counter


def _shared(inner: CountingRhs, total: CountingRhs):
    def call(dy, y, params, t):
        before = inner.count
        inner(dy, y, params, t)
        total.count += inner.count - before

    return call
