import math

from app.constants.method_ids import HENON_HEILES, OUTER_SOLAR_SYSTEM, SCHWARZSCHILD

# Step size and end time used by the CLI when neither flags nor a config
# file give them. "tf_long" is the production-length interval (--long).
PROBLEM_DEFAULTS = {
    HENON_HEILES: {"h": 2 * math.pi / 68, "tf": 2 * math.pi * 100, "tf_long": 2 * math.pi * 1e4},
    OUTER_SOLAR_SYSTEM: {"h": 50.0, "tf": 5e5, "tf_long": 1e7},
    SCHWARZSCHILD: {"h": 32.0, "tf": 3.2e5, "tf_long": 1e7},
}
