import logging
from functools import lru_cache
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from app.constants.error_codes import ErrorCode
from app.constants.method_ids import SPLITTING_METHODS, UNBUNDLED_METHODS
from app.core.config import DATA_DIR
from app.core.exceptions import AppException
from app.models.enums.scheme_type import SchemeType
from app.schemas.splitting.scheme_schemas import ABSplittingScheme, CompositionScheme
from app.services.splitting.order_condition_service import max_order_residual

logger = logging.getLogger(__name__)

SCHEME_DIR = DATA_DIR / "schemes"
ORDER_RESIDUAL_LIMIT = 1e-13

Scheme = Union[CompositionScheme, ABSplittingScheme]


def _invalid(name: str, reason: str, **details) -> AppException:
    return AppException(
        2,
        f"Invalid coefficient file for scheme '{name}': {reason}",
        ErrorCode.SCHEME_FILE_INVALID,
        details={"scheme": name, **details},
    )


def parse_scheme_text(name: str, text: str) -> Scheme:
    header: dict[str, str] = {}
    sources: list[str] = []
    values: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            key, value = key.strip(), value.strip()
            if key == "source":
                sources.append(value)
            else:
                header[key] = value
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise _invalid(name, "not a decimal", line=lineno)

    for key in ("name", "order", "type"):
        if key not in header:
            raise _invalid(name, f"missing '# {key}' header")
    if header["name"] != name:
        raise _invalid(name, "header name does not match file", header=header["name"])

    try:
        kind = SchemeType(header["type"])
        order = int(header["order"])
        source = " ".join(sources) or None
        if kind == SchemeType.gamma:
            return CompositionScheme(name=name, order=order, gammas=values, source=source)
        if len(values) % 2 == 0:
            raise _invalid(name, "ab file needs 2 s + 1 values", count=len(values))
        s = len(values) // 2
        return ABSplittingScheme(name=name, order=order, a=values[: s + 1], b=values[s + 1 :], source=source)
    except ValidationError as exc:
        raise _invalid(name, "coefficients fail validation", errors=exc.errors(include_url=False))
    except ValueError as exc:
        raise _invalid(name, str(exc))


def load_scheme_file(name: str, directory: Path | None = None) -> Scheme:
    path = Path(directory or SCHEME_DIR) / f"{name}.txt"
    if not path.is_file():
        raise AppException(
            4,
            f"Coefficient file for scheme '{name}' not found",
            ErrorCode.DATA_FILE_MISSING,
            details={"scheme": name, "path": str(path)},
        )
    scheme = parse_scheme_text(name, path.read_text(encoding="utf-8"))

    if isinstance(scheme, CompositionScheme):
        residual = max_order_residual(scheme.gammas, scheme.order)
        if residual > ORDER_RESIDUAL_LIMIT:
            raise _invalid(name, "order conditions not satisfied", residual=residual)
    return scheme


@lru_cache(maxsize=None)
def scheme_registry() -> dict[str, Scheme]:
    registry = {name: load_scheme_file(name) for name in SPLITTING_METHODS}
    logger.debug("Scheme registry loaded", extra={"schemes": list(registry)})
    return registry


@lru_cache(maxsize=None)
def _supplied_scheme(name: str) -> Scheme:
    path = SCHEME_DIR / f"{name}.txt"
    if not path.is_file():
        raise AppException(
            4,
            f"Published coefficients for '{name}' are not bundled; place the table at {path}",
            ErrorCode.DATA_FILE_MISSING,
            details={"scheme": name, "path": str(path)},
        )
    return load_scheme_file(name)


def get_scheme(name: str) -> Scheme:
    if name in UNBUNDLED_METHODS:
        return _supplied_scheme(name)
    if name not in SPLITTING_METHODS:
        raise AppException(
            2,
            f"Unknown method '{name}'",
            ErrorCode.UNKNOWN_METHOD,
            details={"available": list(SPLITTING_METHODS + UNBUNDLED_METHODS)},
        )
    return scheme_registry()[name]
