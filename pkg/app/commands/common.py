from pathlib import Path
from typing import Any, Optional

import orjson
import typer

from app.constants.error_codes import ErrorCode
from app.constants.problem_defaults import PROBLEM_DEFAULTS
from app.core.config import LONG_MODE, OUTPUT_DIR
from app.core.exceptions import AppException
from app.schemas.bench.run_schemas import RunSpec


def load_config_file(path: Optional[Path]) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        data = orjson.loads(Path(path).read_bytes())
    except FileNotFoundError:
        raise AppException(2, "Config file not found", ErrorCode.CONFIG_FILE_INVALID, details={"path": str(path)})
    except orjson.JSONDecodeError as exc:
        raise AppException(
            2, "Config file is not valid JSON", ErrorCode.CONFIG_FILE_INVALID, details={"path": str(path), "reason": str(exc)}
        )
    if not isinstance(data, dict):
        raise AppException(2, "Config file must hold a JSON object", ErrorCode.CONFIG_FILE_INVALID, details={"path": str(path)})
    return data


def build_run_spec(config: Optional[Path], long: bool = False, **flags) -> RunSpec:
    """
    Config file values, overridden by explicit flags, completed with the
    problem's default h and interval.
    """
    values = load_config_file(config)
    values.update({k: v for k, v in flags.items() if v is not None})

    problem = values.get("problem")
    if problem is not None and problem not in PROBLEM_DEFAULTS:
        raise AppException(
            2,
            f"Unknown problem '{problem}'",
            ErrorCode.UNKNOWN_PROBLEM,
            details={"available": sorted(PROBLEM_DEFAULTS)},
        )
    defaults = PROBLEM_DEFAULTS.get(problem, {})
    values.setdefault("h", defaults.get("h"))
    values.setdefault("tf", defaults.get("tf_long" if long or LONG_MODE else "tf"))
    values = {k: v for k, v in values.items() if v is not None}

    return RunSpec.model_validate(values)


def split_list(raw: Optional[str], cast=str) -> Optional[list]:
    if raw is None:
        return None
    return [cast(item.strip()) for item in raw.split(",") if item.strip()]


def output_path(out: Optional[Path], default_name: str) -> Path:
    return Path(out) if out is not None else OUTPUT_DIR / default_name


def summary(line: str) -> None:
    typer.echo(line)
