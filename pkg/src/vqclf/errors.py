"""Exception types shared across the package.

Each class carries a short ``category`` used by the CLI to print a
machine-parsable error line on stderr.
"""


class VqclfError(Exception):
    """Base class for package-specific errors."""

    category = "internal"


class CapacityError(VqclfError, ValueError):
    """Requested register size exceeds the configured qubit cap."""

    category = "capacity"


class ShapeError(VqclfError, ValueError):
    """Array or circuit dimensions do not match."""

    category = "shape"


class ConfigError(VqclfError, ValueError):
    """Invalid, unknown, or inconsistent configuration."""

    category = "config"


class ParseError(VqclfError, ValueError):
    """Malformed input file; ``line`` is the 1-based offending line."""

    category = "parse"

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class ValidationError(VqclfError, ValueError):
    """Well-formed input with invalid content (bad label, NaN, ...)."""

    category = "validation"

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class SolverError(VqclfError, RuntimeError):
    """Iterative solver or optimizer failed to make progress."""

    category = "solver"

    def __init__(self, message, iteration=None, residual=None):
        super().__init__(message)
        self.iteration = iteration
        self.residual = residual


class DegenerateSampleError(VqclfError, RuntimeError):
    """Resampling kept producing single-class samples."""

    category = "degenerate-sample"
