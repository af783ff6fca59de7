"""Configuration module for the ihtgap toolkit."""
import os
import logging
from dotenv import load_dotenv

# Load environment variables from .env file
# This needs to be at the top of the file
load_dotenv()

# Set up logging
logging.basicConfig(
    level=logging.INFO if os.environ.get("IHTGAP_VERBOSE", "0") != "1" else logging.DEBUG,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger("IhtGap")

# Run-level defaults from environment variables
DEFAULT_SEED = int(os.environ.get("IHTGAP_SEED", 20240101))
DEFAULT_THREADS = int(os.environ.get("IHTGAP_THREADS", 1))
DEFAULT_MC_SAMPLES = int(os.environ.get("IHTGAP_MC_SAMPLES", 100_000))
DEFAULT_OUTPUT_DIR = os.environ.get("IHTGAP_OUTPUT_DIR", "results")

if DEFAULT_THREADS < 1:
    logger.warning(f"IHTGAP_THREADS={DEFAULT_THREADS} is not positive, falling back to 1 thread.")
    DEFAULT_THREADS = 1

# Power iteration for the largest eigenvalue
POWER_ITERATION_MAX_ITERS = 1000
POWER_ITERATION_TOL = 1e-8
POWER_ITERATION_SEED = 0

# Restricted least squares and Newton debiasing
PINV_RCOND = 1e-12
NEWTON_TOL = 1e-10
NEWTON_MAX_ITERS = 200

# IHT defaults
DEFAULT_MAX_ITERS = 1000
DEFAULT_GRAD_TOL = 1e-10
STABLE_SUPPORT_STEPS = 2

# Brute-force l0-ERM guards
BRUTE_FORCE_P_CAP = 20
BRUTE_FORCE_MAX_SUPPORTS = 1_000_000
OBJECTIVE_TIE_TOL = 1e-12

# Data generation
DEFAULT_MARGIN_SCALE = 2.0
DEFAULT_PERTURB_SIGMA = 0.01
DEFAULT_NONZERO_STD = 1.0
DEFAULT_DOMAIN_RADIUS = 10.0

# Monte Carlo and stability measurements
MC_CHUNK_SIZE = 10_000
STABILITY_EVAL_SAMPLES = 10_000
DEFAULT_RE_TRIALS = 200

# RNG metadata echoed into run outputs
RNG_NAME = "PCG64/SeedSequence"
NORMAL_TRANSFORM = "ziggurat"

# Verbose logging
VERBOSE = os.environ.get("IHTGAP_VERBOSE", "0") == "1"  # Convert string to boolean


def get_config_summary():
    """Return a summary of the current configuration for logging purposes."""
    return {
        "Seed": DEFAULT_SEED,
        "Threads": DEFAULT_THREADS,
        "MC Samples": DEFAULT_MC_SAMPLES,
        "Output Dir": DEFAULT_OUTPUT_DIR,
        "RNG": RNG_NAME,
        "Normal Transform": NORMAL_TRANSFORM,
        "Verbose": VERBOSE,
    }

# Log configuration on import
if VERBOSE:
    logger.debug(f"Configuration loaded: {get_config_summary()}")
