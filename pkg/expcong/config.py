"""
Configuration Management Module

This module centralizes all configuration settings for expcong, including
integer magnitude bounds, factorization and caching parameters, incongruence
solver limits, prime scanning parameters and logging configuration.

Every setting can be overridden through the environment (or an env file named
by ENV_FILE); command-line flags take precedence over these defaults.

Version: 1.0.0
"""
import os
from typing import Dict, Any
from dotenv import load_dotenv

env_file = os.getenv('ENV_FILE', '.env')
load_dotenv(env_file)

# ============================================================================
# LOGGING CONFIGURATION
# ============================================================================
# stdout carries the JSON document, so log records always go to stderr

LOG_LEVEL: str = os.getenv('LOG_LEVEL', 'WARNING').upper()
LOG_FILE: str = os.getenv('LOG_FILE', '')
LOG_FORMAT: str = '%(asctime)s | %(levelname)-5s | %(name)s | %(message)s'
LOG_DATE_FORMAT: str = '%H:%M:%S'

# ============================================================================
# ARITHMETIC CONFIGURATION
# ============================================================================
# Public integer inputs are bounded by 2^MAGNITUDE_CAP_BITS in absolute value

MAGNITUDE_CAP_BITS: int = int(os.getenv('EXPCONG_MAGNITUDE_CAP_BITS', '62'))
MAGNITUDE_CAP: int = 1 << MAGNITUDE_CAP_BITS

# Trial division bound before switching to Pollard-Brent
TRIAL_DIVISION_LIMIT: int = int(os.getenv('EXPCONG_TRIAL_DIVISION_LIMIT', '100000'))

# LRU size for factorizations of input integers
FACTOR_CACHE_SIZE: int = int(os.getenv('EXPCONG_FACTOR_CACHE_SIZE', '4096'))

# Segmented enumeration bound for primes_in
PRIME_RANGE_CAP: int = 1 << 40

# ============================================================================
# SOLVER CONFIGURATION
# ============================================================================

SOLVER_CAP_BITS: int = int(os.getenv('EXPCONG_SOLVER_CAP_BITS', '24'))
SOLVER_CAP: int = 1 << SOLVER_CAP_BITS
SOLVER_PREFLIGHT: int = int(os.getenv('EXPCONG_SOLVER_PREFLIGHT', '10000'))
SEED: int = int(os.getenv('EXPCONG_SEED', '0'))

# sign-extended | literal
DEFAULT_MODE: str = os.getenv('EXPCONG_DEFAULT_MODE', 'sign-extended').lower()

# ============================================================================
# SCAN CONFIGURATION
# ============================================================================

SCAN_WORKERS: int = int(os.getenv('EXPCONG_SCAN_WORKERS', '1'))
SCAN_CHUNK: int = int(os.getenv('EXPCONG_SCAN_CHUNK', '65536'))
FIRST_MATCHES: int = int(os.getenv('EXPCONG_FIRST_MATCHES', '100'))

# Primes below this bound are never held against a Finite verdict
FINITE_FLOOR: int = int(os.getenv('EXPCONG_FINITE_FLOOR', '1000'))

# ============================================================================
# CONSTRUCTED CONFIGURATIONS
# ============================================================================

SCAN_CONFIG = {
    "workers": SCAN_WORKERS,
    "chunk_size": SCAN_CHUNK,
    "first_matches": FIRST_MATCHES,
    "finite_floor": FINITE_FLOOR,
}

VALID_MODES = ("sign-extended", "literal")

# ============================================================================
# UTILITY FUNCTIONS
# ============================================================================

def validate_config() -> None:
    """Check that the effective settings are usable"""
    from .core.exceptions import ConfigurationError

    if DEFAULT_MODE not in VALID_MODES:
        raise ConfigurationError(f"Unknown EXPCONG_DEFAULT_MODE '{DEFAULT_MODE}', expected one of {VALID_MODES}")
    positives = {
        "EXPCONG_MAGNITUDE_CAP_BITS": MAGNITUDE_CAP_BITS,
        "EXPCONG_TRIAL_DIVISION_LIMIT": TRIAL_DIVISION_LIMIT,
        "EXPCONG_FACTOR_CACHE_SIZE": FACTOR_CACHE_SIZE,
        "EXPCONG_SOLVER_CAP_BITS": SOLVER_CAP_BITS,
        "EXPCONG_SCAN_WORKERS": SCAN_WORKERS,
        "EXPCONG_SCAN_CHUNK": SCAN_CHUNK,
    }
    for name, value in positives.items():
        if value <= 0:
            raise ConfigurationError(f"{name} must be positive, got {value}")
    if SOLVER_PREFLIGHT < 0 or FIRST_MATCHES < 0 or FINITE_FLOOR < 0:
        raise ConfigurationError("EXPCONG_SOLVER_PREFLIGHT, EXPCONG_FIRST_MATCHES and EXPCONG_FINITE_FLOOR must be non-negative")


def get_config_summary() -> Dict[str, Any]:
    """Get configuration summary for debugging"""
    return {
        "magnitude_cap_bits": MAGNITUDE_CAP_BITS,
        "trial_division_limit": TRIAL_DIVISION_LIMIT,
        "factor_cache_size": FACTOR_CACHE_SIZE,
        "solver": {
            "cap_bits": SOLVER_CAP_BITS,
            "preflight_samples": SOLVER_PREFLIGHT,
            "seed": SEED,
            "default_mode": DEFAULT_MODE,
        },
        "scan": SCAN_CONFIG,
        "log_level": LOG_LEVEL,
        "log_file": LOG_FILE or None,
    }
