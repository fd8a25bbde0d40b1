"""Exception hierarchy shared across the package."""


class ZSLError(Exception):
    """Base class for every error raised by zsl."""


class PoleError(ZSLError, ZeroDivisionError):
    """Evaluation requested at a pole of a meromorphic function."""


class ConvergenceError(ZSLError, ArithmeticError):
    """An iterative evaluation did not converge within its iteration cap."""


class DomainError(ZSLError, ValueError):
    """Argument outside the region where an operation is defined."""


class ScanError(ZSLError):
    """Zero scan could not separate sign changes (grid too coarse)."""


class CatalogMismatch(ZSLError, ValueError):
    """Spectral vectors built on different zero catalogs were combined."""


class WeilViolation(ZSLError, ValueError):
    """Zeta numerator whose reciprocal roots break |alpha|^2 = q."""


class InconsistentCounts(ZSLError, ValueError):
    """Point counts that do not come from a zeta function with integer coefficients."""


class AmbiguousSign(ZSLError):
    """Neither sign of the root number satisfies the functional equation."""


class ParseError(ZSLError, ValueError):
    """Malformed descriptor string; ``token`` names the offending piece."""

    def __init__(self, message, token=None):
        super().__init__(message)
        self.token = token
