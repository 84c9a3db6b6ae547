from enum import Enum

class RunFlag(str, Enum):
    max_iters_reached = "max_iters_reached"
    divergence = "divergence"
    error = "error"
    endpoint_adjusted = "endpoint_adjusted"
    cpu_matched = "cpu_matched"
