# tests/test_iteration_service.py
#
# Covers: init_guess, fixed_point_sweep, partitioned_sweep, stop_check,
#         irkgl_step, and the sequential (stage-loop) kernels
# Validates: lane kernels equal the stage loop bitwise, the stagnation
#            criterion, the extended-precision stage solve.


import mpmath as mp
import numpy as np
import pytest

from app.constants.error_codes import ErrorCode
from app.core.exceptions import AppException
from app.models.enums.iteration_mode import IterationMode
from app.models.irkgl.workspace import StepWorkspace
from app.models.lanes.state_array import StateArray
from app.models.problems.ode_problem import OdeProblem, SecondOrderStructure
from app.services.irkgl.iteration_service import (
    fixed_point_sweep,
    init_guess,
    partitioned_sweep,
    stop_check,
)
from app.services.irkgl.sequential_service import (
    sequential_init_guess,
    sequential_partitioned_sweep,
    sequential_sweep,
)
from app.services.irkgl.step_service import SEQUENTIAL_KERNEL, irkgl_step
from app.services.tableau.collocation_service import collocation_coeffs
from app.services.tableau.gauss_nodes_service import gauss_nodes
from tests.conftest import HH_STEP, make_config, make_linear, make_oscillator, make_zero


# -----------------------------------------------------------------------
# HELPERS
# -----------------------------------------------------------------------

def _perturbed_lanes(problem, rng, scale):
    y = np.asarray(problem.y0)
    noise = rng.normal(size=(problem.dim, 8)) * scale * (np.abs(y)[:, None] + 1e-3)
    return StateArray(y[:, None] + noise, problem.shape)


def _step(problem, tableau, h, mode=IterationMode.first_order, max_iters=100, y=None, t=0.0, ws=None, kernel=None):
    config = make_config(h=abs(h), tf=abs(h), mode=mode, max_iters=max_iters)
    ws = ws or StepWorkspace.create(problem.dim, tableau.s, problem.shape)
    y = np.array(problem.y0 if y is None else y)
    kwargs = {"kernel": kernel} if kernel is not None else {}
    return irkgl_step(problem, tableau, config, t, y, ws, h=h, **kwargs), ws


def _free_particle():
    def rhs(dy, y, params, t):
        dy[0] = y[1]
        dy[1] = 0.0 * y[0]

    def accel(dv, q, params, t):
        dv[0] = 0.0 * q[0]

    return OdeProblem(
        label="free",
        dim=2,
        rhs=rhs,
        params=None,
        y0=np.array([0.5, 0.25]),
        second_order=SecondOrderStructure(d=1, accel=accel),
    )


# -----------------------------------------------------------------------
# INIT GUESS
# -----------------------------------------------------------------------

def test_init_guess_without_history_broadcasts(tableau):
    y = np.array([0.1, -0.2, 0.3, 0.4])
    Y = init_guess(tableau, y, StateArray.zeros(4, 8), has_history=False)
    assert np.array_equal(Y.data, np.repeat(y[:, None], 8, axis=1))


def test_init_guess_with_zero_increments_broadcasts(tableau):
    y = np.array([1.0, 2.0])
    Y = init_guess(tableau, y, StateArray.zeros(2, 8))
    assert np.array_equal(Y.data, np.repeat(y[:, None], 8, axis=1))


def test_init_guess_matches_stage_loop_bitwise(tableau):
    rng = np.random.default_rng(11)
    y = rng.normal(size=4)
    L_prev = StateArray(rng.normal(size=(4, 8)) * 1e-2)
    lanes = init_guess(tableau, y, L_prev)
    loop = sequential_init_guess(tableau, y, L_prev)
    assert np.array_equal(lanes.data, loop.data)


# -----------------------------------------------------------------------
# SWEEPS
# -----------------------------------------------------------------------

def test_sweep_on_zero_field_is_stationary(tableau):
    problem = make_zero()
    y = np.asarray(problem.y0)
    Y_in = StateArray.broadcast(y, 8)
    Y_out, F, L = fixed_point_sweep(problem, tableau, 0.0, 0.1, y, Y_in)
    assert np.array_equal(Y_out.data, Y_in.data)
    assert not L.data.any()


def test_sweep_linear_ode_gives_picard_iterate(tableau_s2):
    problem = make_linear(lam=-0.7)
    h = 0.1
    y = np.array([1.0])
    Y_out, _, _ = fixed_point_sweep(problem, tableau_s2, 0.0, h, y, StateArray.broadcast(y, 2))
    # sum_i mu_{j,i} b_i = c_j, so one sweep from the broadcast gives 1 + h lam c_j
    for j in range(2):
        assert Y_out.data[0, j] == pytest.approx(1.0 + h * -0.7 * tableau_s2.c[j], rel=1e-15)


@pytest.mark.parametrize("name", ["hh", "solar"])
def test_sweep_matches_stage_loop_bitwise(name, request, tableau):
    problem = request.getfixturevalue(name)
    rng = np.random.default_rng(5)
    y = np.asarray(problem.y0)
    for _ in range(100):
        Y_in = _perturbed_lanes(problem, rng, 1e-3)
        lanes = fixed_point_sweep(problem, tableau, 0.3, 0.1, y, Y_in)
        loop = sequential_sweep(problem, tableau, 0.3, 0.1, y, Y_in)
        for a, b in zip(lanes, loop):
            assert np.array_equal(a.data, b.data)


def test_schwarzschild_sweep_matches_stage_loop(bh, tableau):
    # sin/cos of a lane vector may use a vectorized libm path
    rng = np.random.default_rng(6)
    y = np.asarray(bh.y0)
    for _ in range(100):
        Y_in = _perturbed_lanes(bh, rng, 1e-3)
        lanes = fixed_point_sweep(bh, tableau, 0.0, 1.0, y, Y_in)
        loop = sequential_sweep(bh, tableau, 0.0, 1.0, y, Y_in)
        for a, b in zip(lanes, loop):
            np.testing.assert_allclose(a.data, b.data, rtol=1e-14, atol=1e-300)


@pytest.mark.parametrize("name", ["hh", "solar"])
def test_partitioned_sweep_matches_stage_loop_bitwise(name, request, tableau):
    problem = request.getfixturevalue(name)
    rng = np.random.default_rng(9)
    y = np.asarray(problem.y0)
    for _ in range(100):
        Y_in = _perturbed_lanes(problem, rng, 1e-3)
        lanes = partitioned_sweep(problem, tableau, 0.0, 0.2, y, Y_in)
        loop = sequential_partitioned_sweep(problem, tableau, 0.0, 0.2, y, Y_in)
        for a, b in zip(lanes, loop):
            assert np.array_equal(a.data, b.data)


def test_partitioned_sweep_needs_second_order_structure(bh, tableau):
    y = np.asarray(bh.y0)
    with pytest.raises(AppException) as exc:
        partitioned_sweep(bh, tableau, 0.0, 1.0, y, StateArray.broadcast(y, 8))
    assert exc.value.exit_code == 2
    assert exc.value.error_code == ErrorCode.NOT_SECOND_ORDER


def test_non_finite_stage_raises_divergence(tableau):
    def rhs(dy, y, params, t):
        dy[0] = y[0] / 0.0

    problem = OdeProblem(label="blowup", dim=1, rhs=rhs, params=None, y0=np.array([1.0]))
    with np.errstate(divide="ignore"):
        with pytest.raises(AppException) as exc:
            fixed_point_sweep(problem, tableau, 0.0, 0.1, np.array([1.0]), StateArray.broadcast([1.0], 8))
    assert exc.value.exit_code == 3
    assert exc.value.error_code == ErrorCode.NUMERICAL_DIVERGENCE


# -----------------------------------------------------------------------
# STOP CHECK
# -----------------------------------------------------------------------

def test_stop_check_exact_fixed_point_at_first_iteration():
    assert stop_check([np.zeros(4)], 1) is True


def test_stop_check_early_iterations_only_stop_on_zero():
    assert stop_check([[1e-3]], 1) is False
    assert stop_check([[1e-3], [1e-3]], 2) is False


def test_stop_check_stagnation_examples():
    deltas = [1e-3, 1e-8, 1e-16, 1e-16, 1e-16]
    assert stop_check(deltas, 4) is False
    assert stop_check(deltas, 5) is True


def test_stop_check_requires_every_component():
    history = [[1e-3, 1e-3], [1e-8, 1e-9], [1e-16, 1e-12], [1e-16, 1e-14], [1e-16, 1e-16]]
    # second component still decreasing
    assert stop_check(history, 5) is False
    history.append([1e-16, 2e-16])
    assert stop_check(history, 6) is False
    history.append([1e-16, 3e-16])
    assert stop_check(history, 7) is True


# -----------------------------------------------------------------------
# STEP
# -----------------------------------------------------------------------

def test_step_on_zero_field_takes_one_iteration(tableau):
    problem = make_zero()
    outcome, _ = _step(problem, tableau, 0.1)
    assert outcome.iterations == 1
    assert not outcome.capped
    assert np.array_equal(outcome.y, problem.y0)


def test_free_particle_partitioned_is_stationary_after_one_sweep(tableau):
    problem = _free_particle()
    outcome, _ = _step(problem, tableau, 0.5, mode=IterationMode.partitioned_second_order)
    assert outcome.iterations == 2
    assert outcome.y[0] == pytest.approx(0.5 + 0.5 * 0.25, rel=1e-15)
    assert outcome.y[1] == 0.25


def test_partitioned_and_first_order_share_fixed_point(tableau):
    problem = make_oscillator(omega=1.0)
    first, _ = _step(problem, tableau, 0.3)
    part, _ = _step(problem, tableau, 0.3, mode=IterationMode.partitioned_second_order)
    assert np.max(np.abs(first.y - part.y)) <= 1e-14


def test_partitioned_needs_no_more_iterations(hh, tableau):
    config_kwargs = {"h": 0.2, "tf": 4.0}
    counts = {}
    for mode in IterationMode:
        ws = StepWorkspace.create(hh.dim, tableau.s)
        config = make_config(mode=mode, **config_kwargs)
        y, total = np.array(hh.y0), 0
        for n in range(20):
            outcome = irkgl_step(hh, tableau, config, n * 0.2, y, ws)
            y, total = outcome.y, total + outcome.iterations
        counts[mode] = total
    assert counts[IterationMode.partitioned_second_order] <= counts[IterationMode.first_order]


def test_step_history_is_committed(hh, tableau):
    outcome, ws = _step(hh, tableau, HH_STEP)
    assert ws.has_history
    assert np.array_equal(ws.L_prev.data, ws.L.data)
    assert len(ws.delta_history) == outcome.iterations


def test_capped_step_is_accepted(hh, tableau):
    outcome, _ = _step(hh, tableau, 0.5, max_iters=3)
    assert outcome.capped
    assert outcome.iterations == 3
    assert np.all(np.isfinite(outcome.y))


def test_sequential_kernel_step_equals_lane_step(hh, tableau):
    lanes, _ = _step(hh, tableau, HH_STEP)
    loop, _ = _step(hh, tableau, HH_STEP, kernel=SEQUENTIAL_KERNEL)
    assert np.array_equal(lanes.y, loop.y)
    assert lanes.iterations == loop.iterations


def test_step_back_returns_to_start(hh, tableau):
    forward, _ = _step(hh, tableau, HH_STEP)
    back, _ = _step(hh, tableau, -HH_STEP, y=forward.y, t=HH_STEP)
    y0 = np.asarray(hh.y0)
    assert np.max(np.abs(back.y - y0)) <= 1e-13 * np.max(np.abs(y0))


def _hh_rhs_mp(y):
    q1, q2, p1, p2 = y
    return [p1, p2, -q1 - 2 * q1 * q2, -q2 - (q1 * q1 - q2 * q2)]


def test_step_matches_extended_precision_stage_solve(hh, tableau):
    outcome, _ = _step(hh, tableau, HH_STEP)

    with mp.workdps(40):
        nodes = gauss_nodes(8, 40)
        b, a = collocation_coeffs(nodes, 40)
        h = mp.mpf(HH_STEP)
        y0 = [mp.mpf(float(v)) for v in hh.y0]
        Y = [list(y0) for _ in range(8)]
        for _ in range(200):
            F = [_hh_rhs_mp(Yi) for Yi in Y]
            Y = [
                [y0[l] + h * mp.fsum(a[i][j] * F[j][l] for j in range(8)) for l in range(4)]
                for i in range(8)
            ]
        F = [_hh_rhs_mp(Yi) for Yi in Y]
        y1 = np.array([float(y0[l] + h * mp.fsum(b[i] * F[i][l] for i in range(8))) for l in range(4)])

    assert np.max(np.abs(outcome.y - y1)) <= 1e-14 * np.max(np.abs(y1))
