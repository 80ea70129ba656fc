"""Exception hierarchy shared by every module."""


class DistrelError(Exception):
    """Base class for all errors raised by this package."""


class ParameterOutOfRange(DistrelError, ValueError):
    pass


class ConstructionInfeasible(DistrelError, ValueError):
    pass


class CapacityError(DistrelError):
    """A computation would exceed a configured size cap."""


class BackendInfeasible(CapacityError):
    pass


class PreconditionError(DistrelError, ValueError):
    pass


class DimensionMismatch(DistrelError, ValueError):
    pass


class InternalInvariantError(DistrelError, RuntimeError):
    pass


class FormatError(DistrelError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
