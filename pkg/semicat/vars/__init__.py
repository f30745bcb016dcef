"""Default variables and configurations for semicat."""

from semicat.vars.limits import DEFAULT_LIMITS
from semicat.vars.suites import ALL_SUITES, SUITES

__all__ = [
    "ALL_SUITES",
    "DEFAULT_LIMITS",
    "SUITES",
]
