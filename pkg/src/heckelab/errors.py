"""Exception hierarchy shared by every module; the CLI maps each class to an exit code."""


class HeckeLabError(Exception):
    pass


class DomainError(HeckeLabError, ValueError):
    """Input violates a precondition, such as k > n or a non-chain flag."""


class ResourceError(HeckeLabError):
    """An enumeration would exceed the configured size guard."""


class BoundaryError(DomainError):
    """A computation left its finite window (degree window or lattice window)."""


class UnsupportedConfigError(DomainError):
    pass


class CalibrationError(HeckeLabError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnassignedSymbolError(DomainError):
    pass
