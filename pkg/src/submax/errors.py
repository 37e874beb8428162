"""Exception types shared across the package.

The CLI maps these onto process exit codes; library callers can catch them
individually.
"""


class SubmaxError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(SubmaxError):
    """A run configuration is invalid or internally inconsistent."""


class ParseError(SubmaxError):
    """An input file is malformed.  Carries a 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class IntegrityError(SubmaxError):
    """A cross-worker invariant was violated (e.g. an infeasible child
    solution arrived at an aggregation node)."""


class InstanceSizeError(SubmaxError):
    """A guard rail against runaway computations (brute force too large)."""
