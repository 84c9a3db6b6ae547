"""
Charged particle near a Schwarzschild black hole in a weak uniform magnetic
field. Native state (r, theta, p_r, p_theta); the explicit splitting works in
the Cartesian-like variables (x, y, p_x, p_y) with x = r cos(theta),
y = r sin(theta), split as H = H_A(x, y) + H_B(p) + H_C.
"""

import math
from typing import NamedTuple

import numpy as np

from app.constants.error_codes import ErrorCode
from app.constants.method_ids import SCHWARZSCHILD
from app.core.exceptions import AppException
from app.models.problems.flow_set import FlowSet
from app.models.problems.ode_problem import OdeProblem
from app.services.problems.state_views import positive_energy_root

DEFAULT_E = 0.995
DEFAULT_L = 4.6
DEFAULT_BETA = 8.9e-4
DEFAULT_R = 11.0
DEFAULT_ENERGY = -0.5
HORIZON_RADIUS = 2.0
FLOW_C_RADIAL_FLOOR = 1e-30


class SchwarzschildParams(NamedTuple):
    E: float = DEFAULT_E
    L: float = DEFAULT_L
    beta: float = DEFAULT_BETA


# =========================
# POLAR FORM
# =========================
def schwarzschild_hamiltonian(y, params):
    E, L, beta = params
    r, th, pr, pth = y[0], y[1], y[2], y[3]
    u = 1 - 2 / r
    sn = np.sin(th)
    s2 = sn * sn
    w = L - beta * r * r * s2 / 2
    return u * pr * pr / 2 - E * E / (2 * u) + pth * pth / (2 * r * r) + w * w / (2 * r * r * s2)


def schwarzschild_rhs(dy, y, params, t):
    E, L, beta = params
    r, th, pr, pth = y[0], y[1], y[2], y[3]
    u = 1 - 2 / r
    sn = np.sin(th)
    cs = np.cos(th)
    s2 = sn * sn
    r2 = r * r
    bb = beta * beta
    dy[0] = u * pr
    dy[1] = pth / r2
    dy[2] = -(
        pr * pr / r2
        + E * E / (r2 * u * u)
        - pth * pth / (r2 * r)
        - L * L / (r2 * r * s2)
        + bb * r * s2 / 4
    )
    dy[3] = cs * (L * L / (r2 * s2 * sn) - bb * r2 * sn / 4)


def polar_sub_hamiltonians(y, params):
    """(H_A, H_B, H_C) in the native variables."""
    E, L, beta = params
    r, th, pr, pth = y[0], y[1], y[2], y[3]
    s2 = np.sin(th) * np.sin(th)
    w = L - beta * r * r * s2 / 2
    h_a = w * w / (2 * r * r * s2) - E * E / (2 * (1 - 2 / r))
    h_b = (pr * pr + pth * pth / (r * r)) / 2
    h_c = -pr * pr / r
    return h_a, h_b, h_c


# =========================
# CANONICAL TRANSFORMATION
# =========================
def polar_to_cart(y: np.ndarray) -> np.ndarray:
    r, th, pr, pth = (float(v) for v in y)
    if not r > 0.0:
        raise AppException(2, "Radius must be positive", ErrorCode.DEGENERATE_RADIUS, details={"r": r})
    c, s = math.cos(th), math.sin(th)
    return np.array([r * c, r * s, c * pr - s * pth / r, s * pr + c * pth / r])


def cart_to_polar(z: np.ndarray) -> np.ndarray:
    x, y, px, py = (float(v) for v in z)
    r = math.hypot(x, y)
    if r == 0.0:
        raise AppException(2, "Degenerate radius (x, y) = 0", ErrorCode.DEGENERATE_RADIUS)
    return np.array([r, math.atan2(y, x), (x * px + y * py) / r, x * py - y * px])


# =========================
# CARTESIAN SUB-HAMILTONIANS
# =========================
def cart_hamiltonian_a(z, params):
    E, L, beta = params
    x, y = z[0], z[1]
    yy = y * y
    w = L - beta * yy / 2
    return w * w / (2 * yy) - E * E / (2 * (1 - 2 / np.sqrt(x * x + yy)))


def cart_hamiltonian_b(z, params=None):
    return (z[2] * z[2] + z[3] * z[3]) / 2


def cart_hamiltonian_c(z, params=None):
    x, y = z[0], z[1]
    nu = x * z[2] + y * z[3]
    r = np.sqrt(x * x + y * y)
    return -nu * nu / (r * r * r)


def cart_gradient_a(x: float, y: float, params) -> tuple[float, float]:
    E, L, beta = params
    z = y * y
    r = math.sqrt(x * x + z)
    w = L - beta / 2 * z
    u = 1 - 2 / r
    W = -w / z
    U = -E * E / (2 * u * u)
    R = U / (r * r * r)
    Z = R + (W - beta) * W / 2
    return -2 * x * R, -2 * y * Z


# =========================
# EXACT FLOWS
# =========================
def make_flows(params: SchwarzschildParams):
    def flow_a(z: np.ndarray, t: float) -> np.ndarray:
        x, y, px, py = (float(v) for v in z)
        gx, gy = cart_gradient_a(x, y, params)
        return np.array([x, y, px - t * gx, py - t * gy])

    def flow_b(z: np.ndarray, t: float) -> np.ndarray:
        x, y, px, py = (float(v) for v in z)
        return np.array([x + t * px, y + t * py, px, py])

    def flow_c(z: np.ndarray, t: float) -> np.ndarray:
        x, y, px, py = (float(v) for v in z)
        r = math.sqrt(x * x + y * y)
        nu = x * px + y * py
        # p_r = 0 is a fixed point of the exact flow
        if abs(nu / r) < FLOW_C_RADIAL_FLOOR * (1 + r):
            return np.array([x, y, px, py])
        c, s = x / r, y / r
        p_theta = -y * px + x * py
        mu = nu * nu / (r * r * r)
        nu_new = nu - 3 * t * mu
        pr_new = float(np.cbrt(mu * nu_new))
        r_new = nu_new / pr_new
        return np.array([
            r_new * c,
            r_new * s,
            c * pr_new - s * p_theta / r_new,
            s * pr_new + c * p_theta / r_new,
        ])

    return flow_a, flow_b, flow_c


def schwarzschild_flowset(E: float = DEFAULT_E, L: float = DEFAULT_L, beta: float = DEFAULT_BETA) -> FlowSet:
    params = SchwarzschildParams(float(E), float(L), float(beta))
    return FlowSet(
        flows=make_flows(params),
        labels=("A", "B", "C"),
        hamiltonians=(
            lambda z: cart_hamiltonian_a(z, params),
            cart_hamiltonian_b,
            cart_hamiltonian_c,
        ),
        to_flow_vars=polar_to_cart,
        from_flow_vars=cart_to_polar,
    )


# =========================
# FACTORY
# =========================
def default_initial_state(params: SchwarzschildParams, r0: float = DEFAULT_R, energy: float = DEFAULT_ENERGY):
    """theta = pi/2, p_r = 0, and p_theta > 0 such that H = energy."""

    def gap(p_theta: float) -> float:
        return float(schwarzschild_hamiltonian(np.array([r0, math.pi / 2, 0.0, p_theta]), params)) - energy

    p_theta = positive_energy_root(gap, SCHWARZSCHILD)
    return np.array([r0, math.pi / 2, 0.0, p_theta])


def outside_horizon(y: np.ndarray) -> bool:
    return bool(y[0] > HORIZON_RADIUS)


def schwarzschild(E: float = DEFAULT_E, L: float = DEFAULT_L, beta: float = DEFAULT_BETA, y0=None) -> OdeProblem:
    params = SchwarzschildParams(float(E), float(L), float(beta))
    return OdeProblem(
        label=SCHWARZSCHILD,
        dim=4,
        rhs=schwarzschild_rhs,
        params=params,
        y0=default_initial_state(params) if y0 is None else np.asarray(y0, dtype=np.float64),
        hamiltonian=schwarzschild_hamiltonian,
        flows=schwarzschild_flowset(*params),
        admissible=outside_horizon,
        metadata={"selectors": ("r",)},
    )
