import os
from pathlib import Path

# Project root
BASE_DIR = Path(__file__).parent

# Run history database (any SQLAlchemy URL)
DATABASE_URL = os.getenv("POLYHOM_DATABASE_URL", f"sqlite:///{BASE_DIR}/polyhom_runs.db")

# Logging
LOG_LEVEL = os.getenv("POLYHOM_LOG_LEVEL", "INFO")
LOG_FILE = os.getenv("POLYHOM_LOG_FILE", f"{BASE_DIR}/polyhom.log")

# Float ingestion: relative merge threshold after scaling the largest value to 1.
# Only consulted in float mode; exact inputs never touch it.
DEFAULT_FLOAT_TOL = float(os.getenv("POLYHOM_FLOAT_TOL", "1e-9"))

# Minimal ratio (smallest inter-cluster gap) / (largest intra-cluster spread)
SEPARATION_FACTOR = 100.0

# Brute-force reference caps (hard errors beyond these)
ORACLE_MAX_POINTS = 12
ORACLE_MAX_M = 4

# Degree-infinity spot check at m = n + 1 runs only on instances this small
CERTIFY_MAX_POINTS = 30

# Worker threads for extension-class checks
DEFAULT_THREADS = int(os.getenv("POLYHOM_THREADS", "1"))

# Digits used for trigonometric class values of prisms, antiprisms and polygons
HIGH_PRECISION_DIGITS = 50

# Families that are only generated with --allow-expensive
EXPENSIVE_FAMILIES = ("cell600", "cell120")

# Report output
REPORT_INDENT = 2
