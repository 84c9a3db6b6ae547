import logging
from functools import lru_cache
from pathlib import Path

import mpmath as mp
import numpy as np

from app.constants.error_codes import ErrorCode
from app.core.config import DATA_DIR, TABLEAU_PRECISION, WORKING_PRECISION
from app.core.exceptions import AppException
from app.models.tableau.gauss_tableau import GaussTableau
from app.services.tableau.collocation_service import (
    collocation_coeffs,
    mu_from,
    nu_from,
    round_to_working,
)
from app.services.tableau.gauss_nodes_service import gauss_nodes

logger = logging.getLogger(__name__)

SUPPORTED_STAGES = (2, 4, 8)
DUMP_DIGITS = 25
DUMP_SECTIONS = ("c", "b", "mu", "nu")
CACHED_TABLE_PATH = DATA_DIR / "tableau" / "gauss_s8.txt"


# =========================
# BUILD
# =========================
@lru_cache(maxsize=None)
def build_tableau(s: int, precision: int = TABLEAU_PRECISION, dtype: str = WORKING_PRECISION) -> GaussTableau:
    if s not in SUPPORTED_STAGES:
        raise AppException(
            2,
            f"Stage count must be one of {SUPPORTED_STAGES}",
            ErrorCode.UNSUPPORTED_STAGE_COUNT,
            details={"s": s},
        )
    working = np.dtype(dtype)

    nodes = gauss_nodes(s, precision)
    b_hp, a_hp = collocation_coeffs(nodes, precision)

    tableau = GaussTableau(
        s=s,
        c=np.array([round_to_working(x, working) for x in nodes], dtype=working),
        b=np.array([round_to_working(x, working) for x in b_hp], dtype=working),
        mu=mu_from(a_hp, b_hp, working, precision),
        nu=nu_from(nodes, precision, working),
    )
    logger.info("Gauss tableau built", extra={"s": s, "precision": precision, "dtype": working.name})
    return tableau


# =========================
# DUMP / LOAD
# =========================
def _fmt(x) -> str:
    return mp.nstr(mp.mpf(float(x)), DUMP_DIGITS)


def format_tableau_dump(tableau: GaussTableau) -> str:
    lines = []
    for name in DUMP_SECTIONS:
        lines.append(f"#{name}")
        values = getattr(tableau, name)
        lines.extend(_fmt(x) for x in np.asarray(values).reshape(-1))
    return "\n".join(lines) + "\n"


def write_tableau_dump(tableau: GaussTableau, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_tableau_dump(tableau), encoding="utf-8")
    return path


def load_tableau_dump(path: Path, dtype: str = "float64") -> GaussTableau:
    path = Path(path)
    if not path.is_file():
        raise AppException(
            4, "Tableau file not found", ErrorCode.DATA_FILE_MISSING, details={"path": str(path)}
        )

    sections: dict[str, list[str]] = {}
    current = None
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            current = line[1:].strip()
            sections[current] = []
        elif current is None:
            raise AppException(
                2, "Value before first section header", ErrorCode.TABLEAU_INVALID, details={"path": str(path)}
            )
        else:
            sections[current].append(line)

    missing = [name for name in DUMP_SECTIONS if name not in sections]
    if missing:
        raise AppException(
            2, "Tableau file is missing sections", ErrorCode.TABLEAU_INVALID, details={"missing": missing}
        )

    working = np.dtype(dtype)
    s = len(sections["c"])
    try:
        arrays = {name: np.array([float(v) for v in sections[name]], dtype=working) for name in DUMP_SECTIONS}
        return GaussTableau(
            s=s,
            c=arrays["c"],
            b=arrays["b"],
            mu=arrays["mu"].reshape(s, s),
            nu=arrays["nu"].reshape(s, s),
        )
    except ValueError as exc:
        raise AppException(
            2, "Malformed tableau file", ErrorCode.TABLEAU_INVALID, details={"path": str(path), "reason": str(exc)}
        )


def load_cached_tableau() -> GaussTableau:
    return load_tableau_dump(CACHED_TABLE_PATH)
