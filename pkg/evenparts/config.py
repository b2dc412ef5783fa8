""" Package wide defaults

Functions that use one of these values accept a keyword argument of the same
name in lower case to override it for a single call.
"""

# Largest ell accepted by the positional generating functions
ELL_CAP = 64

# Largest n the brute force enumeration will accept
ORACLE_CAP = 24

# Root finding
ROOT_TOL = 1e-12
ROOT_MAX_ITER = 500
SEPARATION = 1e-8
MERGE_RADIUS = 1e-5

# Pole decomposition reconstruction check
RECONSTRUCTION_RTOL = 1e-9
RECONSTRUCTION_SAMPLES = 16
SAMPLE_SEED = 20240601

# Agreement required between numeric and exact values
NUMERIC_RTOL = 1e-6
NUMERIC_ATOL = 1e-6

# Largest n the numeric engine rounds into rows; beyond it rounding no longer
# recovers the integer from a double
NUMERIC_N_MAX = 40

# Largest power of ten a single pole term may reach
FLOAT_EXPONENT_LIMIT = 280

# Values of n used by the closed form spot check
DEFAULT_SPOT_CHECKS = (5, 10, 20, 30, 40)
