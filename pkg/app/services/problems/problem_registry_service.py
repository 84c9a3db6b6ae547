from typing import Any, Callable

from app.constants.error_codes import ErrorCode
from app.constants.method_ids import HENON_HEILES, OUTER_SOLAR_SYSTEM, SCHWARZSCHILD
from app.core.exceptions import AppException
from app.models.problems.ode_problem import OdeProblem
from app.services.problems.henon_heiles_service import henon_heiles
from app.services.problems.schwarzschild_service import schwarzschild
from app.services.problems.solar_system_service import outer_solar_system

PROBLEM_FACTORIES: dict[str, Callable[..., OdeProblem]] = {
    HENON_HEILES: henon_heiles,
    OUTER_SOLAR_SYSTEM: outer_solar_system,
    SCHWARZSCHILD: schwarzschild,
}

PROBLEM_DESCRIPTIONS = {
    HENON_HEILES: "Hénon–Heiles, D=4, H=1/12 regular orbit (params: xi, lam)",
    OUTER_SOLAR_SYSTEM: "Sun + 4 outer planets + Pluto, D=36, AU/day (params: masses)",
    SCHWARZSCHILD: "charged particle near a Schwarzschild black hole, D=4 (params: E, L, beta)",
}


def get_problem(problem_id: str, params: dict[str, Any] | None = None) -> OdeProblem:
    factory = PROBLEM_FACTORIES.get(problem_id)
    if factory is None:
        raise AppException(
            2,
            f"Unknown problem '{problem_id}'",
            ErrorCode.UNKNOWN_PROBLEM,
            details={"available": sorted(PROBLEM_FACTORIES)},
        )
    try:
        return factory(**(params or {}))
    except TypeError as exc:
        raise AppException(
            2,
            f"Invalid parameters for problem '{problem_id}'",
            ErrorCode.INVALID_CONFIG,
            details={"params": params, "reason": str(exc)},
        )
