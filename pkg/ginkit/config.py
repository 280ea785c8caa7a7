from __future__ import annotations

import logging
import os
import sys
from typing import Any

# Central place for tunable defaults.
# Keep magic numbers OUT of the math modules and main.py.

LOGGER = logging.getLogger(__name__)

# Ambient variable count when --vars is not given
DEFAULT_VARS = 2

# Hilbert equality sweep runs over t in [0, lambda0 + m]
HILBERT_SWEEP_SLACK = 0

# --- Brute-force Hilbert oracle ---
BRUTEFORCE_T_MAX = 60
BRUTEFORCE_MAX_VARS = 5

# --- Groebner oracle (desk scale only) ---
ORACLE_COEFF_BOUND = 50
ORACLE_MAX_BASIS = 2000
ORACLE_RETRY_LIMIT = 3
ORACLE_DEFAULT_SEED = 20120
ORACLE_MAX_ALPHA = 3
ORACLE_MAX_BETA = 4
ORACLE_MAX_VARS = 3
ORACLE_MAX_POWER = 2

# Env var that overrides ORACLE_MAX_BASIS
MAX_BASIS_ENV = "GINKIT_MAX_BASIS"

# --- verify / sweep ---
ALL_CHECKS = ("structure", "hilbert", "closed-form", "betti", "reconstruction", "oracle")
DEFAULT_CHECKS = ("structure", "hilbert", "closed-form", "betti")
SWEEP_CHECKS = ("structure", "hilbert", "closed-form", "betti")

# Chart glyphs: gap 1, gap 2, anything else (beta - 2*alpha + 2)
GLYPHS = {1: "·", 2: ":"}
GLYPH_OTHER = "#"


def setting(name: str, default: Any = None) -> Any:
    """Read a config value without crashing if the setting is missing."""
    return getattr(sys.modules[__name__], name, default)


def max_basis_size() -> int:
    """ORACLE_MAX_BASIS, unless GINKIT_MAX_BASIS holds a positive integer."""
    raw = os.environ.get(MAX_BASIS_ENV)
    if raw is None or not raw.strip():
        return int(setting("ORACLE_MAX_BASIS", 2000))

    try:
        value = int(raw.strip())
    except ValueError:
        LOGGER.warning("Ignoring %s=%r (not an integer)", MAX_BASIS_ENV, raw)
        return int(setting("ORACLE_MAX_BASIS", 2000))

    if value < 1:
        LOGGER.warning("Ignoring %s=%r (must be positive)", MAX_BASIS_ENV, raw)
        return int(setting("ORACLE_MAX_BASIS", 2000))

    LOGGER.info("Buchberger basis cap overridden by %s: %d", MAX_BASIS_ENV, value)
    return value
