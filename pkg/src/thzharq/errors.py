"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class NumericError(RuntimeError):
    """A numerical routine failed to reach its accuracy target.

    The ``diagnostics`` dict carries whatever the routine knew at the point
    of failure (achieved tolerance, partial sums, node counts, ...).
    """

    def __init__(self, message: str, **diagnostics):
        super().__init__(message)
        self.diagnostics = dict(diagnostics)


class ConfigError(ValueError):
    """A run configuration failed to parse or validate."""
