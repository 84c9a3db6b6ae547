# app/commands/__init__.py

from .list_command import list_command
from .run_command import run_command
from .sweep_command import sweep_command
from .trace_command import trace_command
