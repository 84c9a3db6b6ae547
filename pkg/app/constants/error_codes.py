from enum import Enum


class ErrorCode(str, Enum):
    # -------- GENERIC --------
    INTERNAL_ERROR = "INTERNAL_ERROR"
    VALIDATION_ERROR = "VALIDATION_ERROR"
    INVALID_CONFIG = "INVALID_CONFIG"

    # -------- LANES --------
    LANE_WIDTH_MISMATCH = "LANE_WIDTH_MISMATCH"
    UNSUPPORTED_LANE_OP = "UNSUPPORTED_LANE_OP"
    STATE_SHAPE_MISMATCH = "STATE_SHAPE_MISMATCH"

    # -------- TABLEAU --------
    NEWTON_NONCONVERGENCE = "NEWTON_NONCONVERGENCE"
    SINGULAR_SYSTEM = "SINGULAR_SYSTEM"
    TABLEAU_INVALID = "TABLEAU_INVALID"
    UNSUPPORTED_STAGE_COUNT = "UNSUPPORTED_STAGE_COUNT"

    # -------- IRKGL --------
    NUMERICAL_DIVERGENCE = "NUMERICAL_DIVERGENCE"
    NOT_SECOND_ORDER = "NOT_SECOND_ORDER"

    # -------- SPLITTING --------
    UNKNOWN_METHOD = "UNKNOWN_METHOD"
    SCHEME_FILE_INVALID = "SCHEME_FILE_INVALID"
    INCOMPATIBLE_METHOD = "INCOMPATIBLE_METHOD"
    FLOW_COUNT_MISMATCH = "FLOW_COUNT_MISMATCH"

    # -------- PROBLEMS --------
    UNKNOWN_PROBLEM = "UNKNOWN_PROBLEM"
    NO_ENERGY_ROOT = "NO_ENERGY_ROOT"
    HORIZON_CROSSED = "HORIZON_CROSSED"
    DEGENERATE_RADIUS = "DEGENERATE_RADIUS"

    # -------- BENCH --------
    ZERO_ENERGY_REFERENCE = "ZERO_ENERGY_REFERENCE"
    TIME_GRID_MISMATCH = "TIME_GRID_MISMATCH"
    UNKNOWN_SELECTOR = "UNKNOWN_SELECTOR"

    # -------- I/O --------
    DATA_FILE_MISSING = "DATA_FILE_MISSING"
    OUTPUT_WRITE_FAILED = "OUTPUT_WRITE_FAILED"
    CONFIG_FILE_INVALID = "CONFIG_FILE_INVALID"
