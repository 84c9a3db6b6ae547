# Identifiers accepted by the CLI and the run specs.

IRKGL16_SIMD = "irkgl16-simd"
IRKGL16_SEQ = "irkgl16-seq"

IMPLICIT_METHODS = (IRKGL16_SIMD, IRKGL16_SEQ)
# Gauss-Legendre stages behind the irkgl16 ids (order 2s = 16)
IRKGL16_STAGES = 8

# -------- SPLITTING SCHEMES (bundled, registry file stems) --------
STRANG = "strang"
SUZ90 = "suz90"
CMP6_13 = "cmp6-13"
CMP8_19 = "cmp8-19"
CMP8_21 = "cmp8-21"
SS05_10 = "ss05-10"
BM02 = "bm02"

SPLITTING_METHODS = (STRANG, SUZ90, CMP6_13, CMP8_19, CMP8_21, SS05_10, BM02)

# -------- SPLITTING SCHEMES (published, coefficients not bundled) --------
# Accepted ids; the table is read from DATA_DIR/schemes/<id>.txt when present.
SS05_6 = "ss05-6"
SS05_8 = "ss05-8"
BCE22 = "bce22"

UNBUNDLED_METHODS = (SS05_6, SS05_8, BCE22)

# -------- PROBLEMS --------
HENON_HEILES = "henon-heiles"
OUTER_SOLAR_SYSTEM = "outer-solar-system"
SCHWARZSCHILD = "schwarzschild"

PROBLEMS = (HENON_HEILES, OUTER_SOLAR_SYSTEM, SCHWARZSCHILD)
