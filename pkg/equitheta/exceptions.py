"""Error hierarchy shared by services and commands.

Every error carries the process exit code the CLI reports for it.
"""


class EquithetaError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 1


class ConfigError(EquithetaError):
    """Run configuration could not be parsed or validated."""

    exit_code = 1


class PreconditionError(EquithetaError, ValueError):
    """An operation was called with arguments outside its domain."""

    exit_code = 1


class EnumerationCapExceeded(PreconditionError):
    """An enumeration would exceed the configured item cap."""


class SizeCapExceeded(PreconditionError):
    """A presentation or minor enumeration exceeds the configured size caps."""


class IllDefinedMapError(PreconditionError):
    """A module map given on generators does not respect the relations."""


class StabilizationFailure(EquithetaError):
    """Truncated Euler-product coefficients failed to vanish in the guard window."""

    exit_code = 2

    def __init__(self, message: str, degree: int) -> None:
        super().__init__(message)
        self.degree = degree


class PropertyFailure(EquithetaError):
    """A checked identity or property did not hold."""

    exit_code = 3

    def __init__(self, message: str, check: str) -> None:
        super().__init__(message)
        self.check = check


class RootFindingError(PropertyFailure):
    """Numeric root finding was ill-conditioned, as opposed to a violated bound."""

    def __init__(self, message: str) -> None:
        super().__init__(message, check="weil_roots")


class ConsistencyFailure(EquithetaError):
    """Independent computations that must agree did not (witnesses, integrality)."""

    exit_code = 4
