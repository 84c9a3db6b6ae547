# tests/conftest.py
#
# Shared test infrastructure for the integrator and benchmark tests.
#
# Tableau: the s = 8 Gauss–Legendre tableau is built once per session
#          (build_tableau is cached as well).
# Problems: the three registered problems plus small helper problems with
#           known exact solutions (oscillator, linear drift, zero field).

import os

import numpy as np
import pytest

# -----------------------------------------------------------------------
# Set env vars BEFORE any app module is imported.
# config.py validates these at import time, so they must be set first.
# -----------------------------------------------------------------------
os.environ.setdefault("APP_ENV", "development")
os.environ.setdefault("WORKING_PRECISION", "float64")
os.environ.setdefault("TIMING_REPEAT", "1")

from app.models.problems.ode_problem import OdeProblem, SecondOrderStructure
from app.schemas.irkgl.integrator_schemas import IntegratorConfig
from app.services.problems.henon_heiles_service import henon_heiles
from app.services.problems.schwarzschild_service import schwarzschild
from app.services.problems.solar_system_service import outer_solar_system
from app.services.problems.state_views import separable_flowset
from app.services.tableau.tableau_service import build_tableau

HH_STEP = 2 * np.pi / 68


# -----------------------------------------------------------------------
# Tableaus
# -----------------------------------------------------------------------
@pytest.fixture(scope="session")
def tableau():
    return build_tableau(8)


@pytest.fixture(scope="session")
def tableau_s2():
    return build_tableau(2)


# -----------------------------------------------------------------------
# Registered problems
# -----------------------------------------------------------------------
@pytest.fixture(scope="session")
def hh():
    return henon_heiles()


@pytest.fixture(scope="session")
def solar():
    return outer_solar_system()


@pytest.fixture(scope="session")
def bh():
    return schwarzschild()


# -----------------------------------------------------------------------
# Helper problems
# -----------------------------------------------------------------------
def oscillator_rhs(dy, y, omega, t):
    dy[0] = y[1]
    dy[1] = -omega * omega * y[0]


def oscillator_accel(dv, q, omega, t):
    dv[0] = -omega * omega * q[0]


def oscillator_hamiltonian(y, omega):
    return 0.5 * (y[1] * y[1] + omega * omega * y[0] * y[0])


def make_oscillator(omega: float = 1.0, y0=(1.0, 0.0)) -> OdeProblem:
    """q'' = -omega^2 q; exact solution q = cos(omega t) for y0 = (1, 0)."""
    omega = float(omega)
    return OdeProblem(
        label="oscillator",
        dim=2,
        rhs=oscillator_rhs,
        params=omega,
        y0=np.array(y0, dtype=np.float64),
        hamiltonian=oscillator_hamiltonian,
        second_order=SecondOrderStructure(d=1, accel=oscillator_accel),
        flows=separable_flowset(
            oscillator_accel,
            1,
            omega,
            None,
            lambda y: 0.5 * y[1] * y[1],
            lambda y: 0.5 * omega * omega * y[0] * y[0],
        ),
    )


def _drift_rhs(dy, y, params, t):
    dy[0] = 1.0


def make_drift(y0: float = 1.0) -> OdeProblem:
    """y' = 1."""
    return OdeProblem(label="drift", dim=1, rhs=_drift_rhs, params=None, y0=np.array([y0]))


def _zero_rhs(dy, y, params, t):
    for k in range(len(y)):
        dy[k] = 0.0


def make_zero(y0=(0.3, -1.2, 2.5)) -> OdeProblem:
    return OdeProblem(label="zero", dim=len(y0), rhs=_zero_rhs, params=None, y0=np.array(y0))


def _linear_rhs(dy, y, lam, t):
    dy[0] = lam * y[0]


def make_linear(lam: float = -0.7) -> OdeProblem:
    """y' = lam y."""
    return OdeProblem(label="linear", dim=1, rhs=_linear_rhs, params=float(lam), y0=np.array([1.0]))


def make_config(h: float, tf: float, **kwargs) -> IntegratorConfig:
    return IntegratorConfig(h=h, tf=tf, **kwargs)
