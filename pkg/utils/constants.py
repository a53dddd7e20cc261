"""
AdaSeq settings, read once at import.

Experiment defaults apply when neither a flag nor a config file sets a value.
The capacity guards bound the exhaustive oracles.
"""
import os
from dotenv import load_dotenv
import logging

# ADASEQ_* and LOG_LEVEL may come from a local .env
load_dotenv()

TOOLKIT_VERSION = "0.1.0"

# Default worker count for commands that accept --jobs
ADASEQ_JOBS = int(os.getenv("ADASEQ_JOBS", "1"))
# Cap on |A| for the gamma enumerator
ADASEQ_MAX_SET = int(os.getenv("ADASEQ_MAX_SET", "4"))

# Capacity guards for exhaustive computations
MAX_ENUMERATION_VERTICES = 20       # exact realization enumeration
MAX_SEQUENCE_SEARCH_VERTICES = 10   # optimal_sequence
MAX_ADAPTIVE_SEARCH_VERTICES = 6    # optimal_adaptive_value
MAX_GAMMA_EDGES = 10                # estimate_gamma
MAX_JOINT_EDGES = 12                # set_marginal_gain
MAX_DKS_SOLVE_VERTICES = 7          # reduce-dks --solve

# Numerical tolerances
PROBABILITY_TOLERANCE = 1e-9
TIE_TOLERANCE = 1e-12
BOUND_TOLERANCE = 1e-9

# Experiment defaults
DEFAULT_PURCHASE_G = 4
DEFAULT_NAVIGATION_G = 3
DEFAULT_SPLIT = 0.8
DEFAULT_TRIALS = 5
DEFAULT_K = 10
PURCHASE_MIN_COUNT = 50      # minimum buyers per item
NAVIGATION_MIN_VISITS = 100   # minimum visits per page

# LOG_LEVEL=DEBUG turns on per-pick policy traces
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

# unknown names fall back to INFO
LOG_LEVEL_VALUE = getattr(logging, LOG_LEVEL, logging.INFO)
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
