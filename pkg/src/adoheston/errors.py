"""Error taxonomy shared across the package.

Two failure families matter to callers (and map to CLI exit codes):
invalid inputs (exit 2) and numerical breakdown at runtime (exit 3).
"""


class ValidationError(ValueError):
    """Input violates a documented precondition (domain, shape, degeneracy)."""


class NumericalError(RuntimeError):
    """A numerical routine failed to converge, overflowed, or produced NaN."""
