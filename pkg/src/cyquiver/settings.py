"""
Configuration for cyquiver jobs.

Defaults are read from the environment once at import time and can be
overridden per job through ``JobConfig`` or the command-line flags.

Environment variables:
    CYQUIVER_TRUNCATION   – cyc.deg truncation N for flows and A∞ extraction (default: 8)
    CYQUIVER_WINDOW       – cyc.deg bound K for DGLA windows (default: 6)
    CYQUIVER_STRUCTURED   – emit JSON reports instead of human-readable ones (disabled by default)
    CYQUIVER_VERBOSE      – verbose logging (disabled by default)
"""

import logging
import os
from dataclasses import dataclass, field
from typing import List, Optional

try:
    CYQUIVER_TRUNCATION = int(os.environ.get("CYQUIVER_TRUNCATION", "8"))
except ValueError:
    CYQUIVER_TRUNCATION = 8

try:
    CYQUIVER_WINDOW = int(os.environ.get("CYQUIVER_WINDOW", "6"))
except ValueError:
    CYQUIVER_WINDOW = 6

_cyquiver_structured = os.environ.get("CYQUIVER_STRUCTURED", "0")
CYQUIVER_STRUCTURED = _cyquiver_structured.lower() in ["1", "true", "yes"]

_cyquiver_verbose = os.environ.get("CYQUIVER_VERBOSE", "0")
CYQUIVER_VERBOSE = _cyquiver_verbose.lower() in ["1", "true", "yes"]

SUBCOMMANDS = {
    "build-double",
    "from-ext",
    "ext-table",
    "check",
    "lift",
    "restrict",
    "gauge",
    "dgla",
    "products",
}


@dataclass
class JobConfig:
    """Parameters of one batch job."""

    subcommand: str
    inputs: List[str] = field(default_factory=list)
    d: Optional[int] = None
    truncation: int = CYQUIVER_TRUNCATION
    window: int = CYQUIVER_WINDOW
    output: Optional[str] = None
    structured: bool = CYQUIVER_STRUCTURED
    verbose: bool = CYQUIVER_VERBOSE

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"Unknown subcommand {self.subcommand!r}")
        if self.truncation < 3:
            raise ValueError("truncation N must be at least 3")
        if self.window < 1:
            raise ValueError("window K must be at least 1")
        if self.d is not None and self.d < 2:
            raise ValueError("d must be at least 2")
        if self.verbose:
            logging.basicConfig(level=logging.INFO)
