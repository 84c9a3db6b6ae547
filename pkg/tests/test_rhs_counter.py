# tests/test_rhs_counter.py
#
# Covers: CountingRhs, counting_problem, timed_run, run log format
# Validates: the independent evaluation counter agrees with the accounting
#            reported by the integrator for both kernels and both modes.

import logging

import numpy as np
import pytest

from app.middleware.rhs_counter import CountingRhs, counting_problem
from app.core.logging import RUN_FORMAT
from app.middleware.run_logging import RunFieldsFilter, timed_run
from app.models.enums.iteration_mode import IterationMode
from app.models.lanes.state_array import StateArray
from app.services.irkgl.integrate_service import integrate
from tests.conftest import HH_STEP, make_config


# -----------------------------------------------------------------------
# COUNTER
# -----------------------------------------------------------------------

def test_lane_call_counts_every_lane(hh):
    counter = CountingRhs(hh.rhs)
    Y = StateArray.broadcast(hh.y0, 8)
    counter(StateArray.zeros(4, 8), Y, hh.params, np.zeros(8))
    assert counter.count == 8
    counter(np.empty(4), np.array(hh.y0), hh.params, 0.0)
    assert counter.count == 9


def test_counting_problem_leaves_original_untouched(hh):
    counted, counter = counting_problem(hh)
    assert counted.rhs is counter
    assert hh.rhs is not counter
    assert counted.label == hh.label
    assert np.array_equal(counted.evaluate_rhs(0.0, hh.y0), hh.evaluate_rhs(0.0, hh.y0))


@pytest.mark.parametrize(
    "sequential, mode",
    [
        (False, IterationMode.first_order),
        (True, IterationMode.first_order),
        (False, IterationMode.partitioned_second_order),
        (True, IterationMode.partitioned_second_order),
    ],
)
def test_counter_matches_reported_evaluations(hh, tableau, sequential, mode):
    counted, counter = counting_problem(hh)
    traj = integrate(counted, tableau, make_config(h=HH_STEP, tf=30 * HH_STEP, mode=mode), sequential=sequential)
    assert counter.count == traj.rhs_evals
    assert traj.rhs_evals == 8 * traj.total_iters


def test_counter_on_nbody(solar, tableau):
    counted, counter = counting_problem(solar)
    traj = integrate(counted, tableau, make_config(h=50.0, tf=500.0))
    assert counter.count == traj.rhs_evals


def test_counted_run_matches_plain_run(hh, tableau):
    config = make_config(h=HH_STEP, tf=20 * HH_STEP)
    counted, _ = counting_problem(hh)
    assert np.array_equal(integrate(counted, tableau, config).y, integrate(hh, tableau, config).y)


# -----------------------------------------------------------------------
# RUN TIMER
# -----------------------------------------------------------------------

def test_timed_run_records_wall_time_and_logs(caplog):
    run_logger = logging.getLogger("run")
    run_logger.addHandler(caplog.handler)
    try:
        with caplog.at_level(logging.INFO, logger="run"):
            with timed_run("strang", "henon-heiles", 0.1) as timer:
                timer.steps = 3
                timer.rhs_evals = 3
    finally:
        run_logger.removeHandler(caplog.handler)
    assert timer.wall_seconds >= 0.0
    records = [r for r in caplog.records if r.name == "run"]
    assert records and records[-1].steps == 3
    assert records[-1].method == "strang"


def test_irkgl_run_line_reports_iterations(hh, tableau, caplog):
    run_logger = logging.getLogger("run")
    run_logger.addHandler(caplog.handler)
    try:
        with caplog.at_level(logging.INFO, logger="run"):
            traj = integrate(hh, tableau, make_config(h=HH_STEP, tf=10 * HH_STEP))
    finally:
        run_logger.removeHandler(caplog.handler)
    record = [r for r in caplog.records if r.name == "run"][-1]
    assert record.iters == traj.total_iters
    assert record.iters_per_step == round(traj.total_iters / 10, 2)
    assert record.capped == 0
    line = logging.Formatter(RUN_FORMAT).format(record)
    assert f"iters={traj.total_iters}" in line
    assert f"rhs={traj.rhs_evals}" in line


def test_run_format_tolerates_records_without_run_fields():
    record = logging.LogRecord("run", logging.INFO, __file__, 1, "plain", None, None)
    assert RunFieldsFilter().filter(record)
    line = logging.Formatter(RUN_FORMAT).format(record)
    assert "- on - | h=- | steps=-" in line
