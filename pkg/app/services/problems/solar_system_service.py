import logging
from pathlib import Path
from typing import NamedTuple, Optional, Sequence

import numpy as np

from app.constants.error_codes import ErrorCode
from app.constants.method_ids import OUTER_SOLAR_SYSTEM
from app.core.config import DATA_DIR
from app.core.exceptions import AppException
from app.models.problems.ode_problem import OdeProblem, SecondOrderStructure
from app.services.problems.state_views import separable_flowset, split_halves

logger = logging.getLogger(__name__)

SOLAR_SYSTEM_FILE = DATA_DIR / "solar_system.txt"
N_BODIES = 6
POSITION_SHAPE = (3, N_BODIES)   # (coordinate, body)
STATE_SHAPE = (2, 3, N_BODIES)   # (position | velocity, coordinate, body)
D_POSITIONS = 3 * N_BODIES


class SolarSystemParams(NamedTuple):
    G: float
    masses: tuple[float, ...]
    gm: tuple[float, ...]
    names: tuple[str, ...]


class BodyRecord(NamedTuple):
    name: str
    mass: float
    position: tuple[float, float, float]
    velocity: tuple[float, float, float]


# =========================
# DATA FILE
# =========================
def load_bodies(path: Optional[Path] = None) -> tuple[float, list[BodyRecord]]:
    path = Path(path or SOLAR_SYSTEM_FILE)
    if not path.is_file():
        raise AppException(
            4,
            "Solar-system data file not found",
            ErrorCode.DATA_FILE_MISSING,
            details={"path": str(path)},
        )

    G = None
    bodies = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            if key.strip() == "G" and value.strip():
                G = float(value)
            continue
        fields = line.split()
        if len(fields) != 8:
            raise AppException(
                2,
                "Malformed solar-system record",
                ErrorCode.INVALID_CONFIG,
                details={"path": str(path), "line": lineno},
            )
        name, *numbers = fields
        mass, x, y, z, vx, vy, vz = (float(v) for v in numbers)
        bodies.append(BodyRecord(name, mass, (x, y, z), (vx, vy, vz)))

    if G is None or len(bodies) != N_BODIES:
        raise AppException(
            2,
            f"Solar-system file must state G and list {N_BODIES} bodies",
            ErrorCode.INVALID_CONFIG,
            details={"path": str(path), "bodies": len(bodies)},
        )
    return G, bodies


def barycentric_state(masses: Sequence[float], q: np.ndarray, v: np.ndarray):
    """Shift (3, N) positions and velocities so the barycentre is at rest at the origin."""
    m = np.asarray(masses, dtype=np.float64)
    total = m.sum()
    q = q - (q @ m / total)[:, None]
    v = v - (v @ m / total)[:, None]
    return q, v


# =========================
# GENERIC RHS
# =========================
def nbody_accel(dv, q, params, t):
    """g_i = sum_j G m_j (q_j - q_i) / |q_j - q_i|^3, pairs in fixed order."""
    gm = params.gm
    n = len(gm)
    for k in range(3):
        for i in range(n):
            dv[k, i] = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            dx = q[0, j] - q[0, i]
            dy = q[1, j] - q[1, i]
            dz = q[2, j] - q[2, i]
            r2 = dx * dx + dy * dy + dz * dz
            r3 = r2 * np.sqrt(r2)
            gi = gm[j] / r3
            gj = gm[i] / r3
            dv[0, i] = dv[0, i] + gi * dx
            dv[1, i] = dv[1, i] + gi * dy
            dv[2, i] = dv[2, i] + gi * dz
            dv[0, j] = dv[0, j] - gj * dx
            dv[1, j] = dv[1, j] - gj * dy
            dv[2, j] = dv[2, j] - gj * dz


def nbody_rhs(dy, y, params, t):
    q, v = split_halves(y, D_POSITIONS, POSITION_SHAPE)
    dq, dv = split_halves(dy, D_POSITIONS, POSITION_SHAPE)
    for k in range(3):
        for i in range(N_BODIES):
            dq[k, i] = v[k, i]
    nbody_accel(dv, q, params, t)


# =========================
# INVARIANTS
# =========================
def _kinetic(y, params):
    _, v = split_halves(y, D_POSITIONS, POSITION_SHAPE)
    total = 0.0
    for i, m in enumerate(params.masses):
        total = total + 0.5 * m * (v[0, i] * v[0, i] + v[1, i] * v[1, i] + v[2, i] * v[2, i])
    return total


def _potential(y, params):
    q, _ = split_halves(y, D_POSITIONS, POSITION_SHAPE)
    total = 0.0
    n = len(params.masses)
    for i in range(n):
        for j in range(i + 1, n):
            dx = q[0, j] - q[0, i]
            dy = q[1, j] - q[1, i]
            dz = q[2, j] - q[2, i]
            total = total - params.G * params.masses[i] * params.masses[j] / np.sqrt(dx * dx + dy * dy + dz * dz)
    return total


def nbody_hamiltonian(y, params):
    return _kinetic(y, params) + _potential(y, params)


def total_momentum(y: np.ndarray, params: SolarSystemParams) -> np.ndarray:
    """Sum of m_i v_i for a flat state (D,) or a stack of states (n, D)."""
    states = np.asarray(y).reshape(-1, *STATE_SHAPE)
    p = np.einsum("i,nki->nk", np.asarray(params.masses), states[:, 1])
    return p[0] if np.ndim(y) == 1 else p


def total_angular_momentum(y: np.ndarray, params: SolarSystemParams) -> np.ndarray:
    """Sum of m_i q_i x v_i for a flat state (D,) or a stack of states (n, D)."""
    states = np.asarray(y).reshape(-1, *STATE_SHAPE)
    q = np.moveaxis(states[:, 0], 1, 2)
    v = np.moveaxis(states[:, 1], 1, 2)
    l = np.einsum("i,nik->nk", np.asarray(params.masses), np.cross(q, v))
    return l[0] if np.ndim(y) == 1 else l


# =========================
# FACTORY
# =========================
def outer_solar_system(masses: Optional[Sequence[float]] = None, data_path: Optional[Path] = None) -> OdeProblem:
    G, bodies = load_bodies(data_path)
    m = tuple(float(x) for x in (masses if masses is not None else [b.mass for b in bodies]))
    if len(m) != N_BODIES:
        raise AppException(
            2, f"Expected {N_BODIES} masses", ErrorCode.INVALID_CONFIG, details={"got": len(m)}
        )

    q = np.array([b.position for b in bodies], dtype=np.float64).T
    v = np.array([b.velocity for b in bodies], dtype=np.float64).T
    q, v = barycentric_state(m, q, v)
    y0 = np.stack([q, v]).reshape(-1)

    params = SolarSystemParams(
        G=G,
        masses=m,
        gm=tuple(G * mi for mi in m),
        names=tuple(b.name for b in bodies),
    )
    logger.debug("Solar-system data loaded", extra={"bodies": params.names})

    def kinetic(y):
        return _kinetic(y, params)

    def potential(y):
        return _potential(y, params)

    return OdeProblem(
        label=OUTER_SOLAR_SYSTEM,
        dim=2 * D_POSITIONS,
        rhs=nbody_rhs,
        params=params,
        y0=y0,
        hamiltonian=nbody_hamiltonian,
        second_order=SecondOrderStructure(d=D_POSITIONS, accel=nbody_accel, position_shape=POSITION_SHAPE),
        flows=separable_flowset(nbody_accel, D_POSITIONS, params, POSITION_SHAPE, kinetic, potential),
        shape=STATE_SHAPE,
        metadata={"selectors": tuple(f"planet:{k}" for k in range(1, N_BODIES)) + ("position",)},
    )
