from contextlib import contextmanager

import orjson
import typer
from pydantic import ValidationError
from rich.console import Console

from app.constants.error_codes import ErrorCode
from app.core.exceptions import AppException
import logging

logger = logging.getLogger(__name__)

err_console = Console(stderr=True)


def _emit(message: str, error_code: ErrorCode, details) -> None:
    payload = {
        "success": False,
        "message": message,
        "error_code": error_code.value,
        "details": details,
    }
    err_console.print(orjson.dumps(payload, default=str).decode(), markup=False, highlight=False)


# -------------------------
# APP EXCEPTIONS
# -------------------------
def app_exception_handler(exc: AppException) -> int:
    _emit(exc.message, exc.error_code, exc.details)
    return exc.exit_code


# -------------------------
# PYDANTIC VALIDATION
# -------------------------
def validation_exception_handler(exc: ValidationError) -> int:
    _emit(
        "Invalid run configuration",
        ErrorCode.VALIDATION_ERROR,
        exc.errors(include_url=False),
    )
    return 2


# -------------------------
# FILESYSTEM
# -------------------------
def os_error_handler(exc: OSError) -> int:
    logger.exception("I/O error")
    _emit(str(exc), ErrorCode.OUTPUT_WRITE_FAILED, {"filename": exc.filename})
    return 4


# -------------------------
# LAST RESORT
# -------------------------
def unhandled_exception_handler(exc: Exception) -> int:
    logger.exception("Unhandled exception")
    _emit("Something went wrong.", ErrorCode.INTERNAL_ERROR, None)
    return 1


EXCEPTION_HANDLERS = (
    (AppException, app_exception_handler),
    (ValidationError, validation_exception_handler),
    (OSError, os_error_handler),
    (Exception, unhandled_exception_handler),
)


@contextmanager
def cli_error_boundary():
    """Translate exceptions raised by a command into its process exit code."""
    try:
        yield
    except (typer.Exit, typer.Abort):
        raise
    except Exception as exc:
        for exc_type, handler in EXCEPTION_HANDLERS:
            if isinstance(exc, exc_type):
                raise typer.Exit(code=handler(exc))
        raise
