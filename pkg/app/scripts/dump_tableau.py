"""
dump_tableau.py: Write the working-precision Gauss–Legendre coefficients.

Usage:
    python -m app.scripts.dump_tableau [s] [output_path]

Defaults: s = 8, output to the cached table under DATA_DIR/tableau/.
TABLEAU_PRECISION and WORKING_PRECISION are read from the environment.
"""

import sys
from pathlib import Path

from app.core.config import TABLEAU_PRECISION, WORKING_PRECISION
from app.services.tableau.tableau_service import CACHED_TABLE_PATH, build_tableau, write_tableau_dump


def dump_tableau():
    s = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    path = Path(sys.argv[2]) if len(sys.argv) > 2 else CACHED_TABLE_PATH.with_name(f"gauss_s{s}.txt")

    tableau = build_tableau(s, TABLEAU_PRECISION, WORKING_PRECISION)
    write_tableau_dump(tableau, path)
    print(f"Tableau s={s} ({WORKING_PRECISION}, {TABLEAU_PRECISION} digits) written to {path}")


if __name__ == "__main__":
    dump_tableau()
