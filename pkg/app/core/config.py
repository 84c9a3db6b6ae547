# app/core/config.py

import os
import logging
from pathlib import Path
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

load_dotenv()

# =====================================================
# APPLICATION
# =====================================================
APP_ENV = os.getenv("APP_ENV", "development")
if APP_ENV not in {"development", "staging", "production"}:
    raise ValueError("APP_ENV must be development | staging | production")

# =====================================================
# WORKING PRECISION
# =====================================================
WORKING_PRECISION = os.getenv("WORKING_PRECISION", "float64")
if WORKING_PRECISION not in {"float64", "float32"}:
    raise ValueError("WORKING_PRECISION must be float64 | float32")

# =====================================================
# TABLEAU GENERATION
# Decimal digits used for nodes, weights and the Vandermonde solves.
# =====================================================
TABLEAU_PRECISION = int(os.getenv("TABLEAU_PRECISION", 50))
if TABLEAU_PRECISION < 30:
    raise ValueError("TABLEAU_PRECISION must be at least 30 decimal digits")

NEWTON_MAX_ITERS = 100

# =====================================================
# FIXED-POINT ITERATION
# =====================================================
MAX_ITERS = int(os.getenv("MAX_ITERS", 100))
if MAX_ITERS < 3:
    raise ValueError("MAX_ITERS must be >= 3")

# =====================================================
# BENCHMARK
# =====================================================
TIMING_REPEAT = int(os.getenv("TIMING_REPEAT", 3))
if TIMING_REPEAT < 1:
    raise ValueError("TIMING_REPEAT must be >= 1")

LONG_MODE = os.getenv("LONG_MODE", "false").lower() == "true"

# ---- Reference runs use at least this step ratio ----
REFERENCE_STEP_RATIO = int(os.getenv("REFERENCE_STEP_RATIO", 4))
if REFERENCE_STEP_RATIO < 4:
    raise ValueError("REFERENCE_STEP_RATIO must be >= 4")

CPU_MATCH_TOLERANCE = 0.10

# =====================================================
# PATHS
# =====================================================
_default_data_dir = Path(__file__).resolve().parent.parent / "data"
DATA_DIR = Path(os.getenv("DATA_DIR", str(_default_data_dir)))
OUTPUT_DIR = Path(os.getenv("OUTPUT_DIR", "output"))

if not DATA_DIR.is_dir():
    logger.warning(
        "DATA_DIR does not exist; scheme and solar-system files will fail to load",
        extra={"data_dir": str(DATA_DIR)},
    )
