"""Exception types shared across the package.

Each maps to a CLI exit code: ConfigError -> 2, NumericInvariantError -> 3,
CacheCorruptionError -> 4.
"""


class ConfigError(ValueError):
    """Invalid configuration or command-line usage."""


class NumericInvariantError(RuntimeError):
    """A numeric invariant (unit-circle root moduli, convergence, parity
    divisibility) failed beyond tolerance; indicates corrupted data or a bug."""


class CacheCorruptionError(RuntimeError):
    """A cache file exists but cannot be parsed or fails validation."""
