"""
Configuration management for conegeo
Handles tolerances, probe counts and environment-driven settings
"""
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

def get_default_seed() -> int:
    """Get the default random seed from the environment (.env) or fall back to 0"""
    seed = os.getenv("CONEGEO_SEED")
    if seed:
        try:
            return int(seed)
        except ValueError:
            return 0
    return 0

def get_log_level() -> str:
    """Get the logging level name from the environment (.env) or fall back to WARNING"""
    level = os.getenv("CONEGEO_LOG_LEVEL")
    if level:
        return level.upper()
    return "WARNING"

def get_probe_count() -> int:
    """Number of random probes used by linearization and round-trip checks"""
    probes = os.getenv("CONEGEO_PROBES")
    if probes:
        try:
            return max(1, int(probes))
        except ValueError:
            return PROBE_COUNT
    return PROBE_COUNT

# Kernel Configuration
KERNEL_TOL = 1e-9
IDEMPOTENT_TOL = 1e-8

# Spectral Configuration
CLUSTER_TOL = 1e-7
INTERIOR_MARGIN = 1e-12
PROJECTION_TOL = 1e-7

# Metric Configuration
RAY_TOL = 1e-9
BISECTION_ITERATIONS = 60
EXP_ARGUMENT_LIMIT = 50.0

# Geometry Configuration
RECIPROCAL_TOL = 1e-7
DEPENDENCE_TOL = 1e-10

# Factorization Configuration
PROBE_COUNT = 20
RESIDUAL_THRESHOLD = 1e-6
JORDAN_FIT_TOL = 1e-7
PROBE_SPREAD = 0.5

# Projection Lattice Configuration
MAX_CHAIN_LENGTH = 5
SIMPLEX_TOL = 1e-9
CHAIN_TOL = 1e-9
