from typing import NamedTuple

import numpy as np

from app.constants.method_ids import HENON_HEILES
from app.models.problems.ode_problem import OdeProblem, SecondOrderStructure
from app.services.problems.state_views import positive_energy_root, separable_flowset

DEFAULT_ENERGY = 1.0 / 12.0
DEFAULT_Q1, DEFAULT_Q2, DEFAULT_P2 = 0.0, 0.3, 0.2


class HenonHeilesParams(NamedTuple):
    lam: float = 1.0
    xi: float = 0.0


# (q1, q2, p1, p2)
def henon_heiles_rhs(dy, y, params, t):
    lam, xi = params
    aux = lam + xi * np.sin(t)
    dy[0] = y[2]
    dy[1] = y[3]
    dy[2] = -y[0] - 2 * aux * y[0] * y[1]
    dy[3] = -y[1] - aux * (y[0] * y[0] - y[1] * y[1])


def henon_heiles_accel(dv, q, params, t):
    lam, xi = params
    aux = lam + xi * np.sin(t)
    dv[0] = -q[0] - 2 * aux * q[0] * q[1]
    dv[1] = -q[1] - aux * (q[0] * q[0] - q[1] * q[1])


def _kinetic(y):
    return 0.5 * (y[2] * y[2] + y[3] * y[3])


def _potential(y, lam=1.0):
    q1, q2 = y[0], y[1]
    return 0.5 * (q1 * q1 + q2 * q2) + lam * (q1 * q1 * q2 - q2 * q2 * q2 / 3.0)


def henon_heiles_hamiltonian(y, params=None):
    lam = 1.0 if params is None else params.lam
    return _kinetic(y) + _potential(y, lam)


def default_initial_state(energy: float = DEFAULT_ENERGY) -> np.ndarray:
    """q1 = 0, q2 = 0.3, p2 = 0.2 and p1 > 0 such that H = energy."""

    def gap(p1: float) -> float:
        return henon_heiles_hamiltonian(np.array([DEFAULT_Q1, DEFAULT_Q2, p1, DEFAULT_P2])) - energy

    p1 = positive_energy_root(gap, HENON_HEILES)
    return np.array([DEFAULT_Q1, DEFAULT_Q2, p1, DEFAULT_P2])


def henon_heiles(xi: float = 0.0, lam: float = 1.0, y0=None) -> OdeProblem:
    """
    Perturbed Hénon–Heiles system. For xi = 0 it is autonomous and separable,
    and carries its second-order structure, Hamiltonian and drift/kick flows.
    """
    params = HenonHeilesParams(lam=float(lam), xi=float(xi))
    autonomous = params.xi == 0.0
    return OdeProblem(
        label=HENON_HEILES,
        dim=4,
        rhs=henon_heiles_rhs,
        params=params,
        y0=default_initial_state() if y0 is None else np.asarray(y0, dtype=np.float64),
        hamiltonian=henon_heiles_hamiltonian if autonomous else None,
        second_order=SecondOrderStructure(d=2, accel=henon_heiles_accel),
        flows=(
            separable_flowset(
                henon_heiles_accel, 2, params, None, _kinetic, lambda y: _potential(y, params.lam)
            )
            if autonomous
            else None
        ),
        metadata={"selectors": ("position", "momentum")},
    )
