# main.py
import os
import logging

import typer

from app.commands import list_command, run_command, sweep_command, trace_command
from app.core.logging import setup_logging

# ------------------------------------------------------------------------------
# ENV CONFIG
# ------------------------------------------------------------------------------
APP_NAME = "gl16bench – symplectic integrator benchmarks"
APP_VERSION = os.getenv("APP_VERSION", "1.0.0")

# ------------------------------------------------------------------------------
# LOGGING
# ------------------------------------------------------------------------------
setup_logging()
logger = logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# APP INIT
# ------------------------------------------------------------------------------
app = typer.Typer(
    name="gl16bench",
    help=f"{APP_NAME} (v{APP_VERSION})",
    add_completion=False,
    no_args_is_help=True,
)

# ------------------------------------------------------------------------------
# COMMANDS
# ------------------------------------------------------------------------------
app.command("list")(list_command)
app.command("run")(run_command)
app.command("sweep")(sweep_command)
app.command("trace")(trace_command)


if __name__ == "__main__":
    app()
