"""
Error types raised by the series engine.
"""


class PrecisionError(ValueError):
    """Fixed-point operation outside its contract (mixed contexts, bad domain)."""


class PlanError(RuntimeError):
    """A digit request cannot be met within the configured resource caps."""
