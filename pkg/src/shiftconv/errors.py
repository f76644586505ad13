"""Exception types shared across the package.

The error categories mirror the CLI exit-code contract: domain/usage
problems are caller errors, pole errors mark evaluation at a genuine
singularity, accuracy errors mean a self-check failed, and resource
errors mean a computation was refused before allocation.
"""


class ShiftconvError(Exception):
    """Base class for all package errors."""


class DomainError(ShiftconvError, ValueError):
    """Arguments outside an operation's stated domain."""


class PoleError(ShiftconvError, ArithmeticError):
    """Evaluation requested at (or within 1e-8 of) a pole."""


class AccuracyError(ShiftconvError, ArithmeticError):
    """A quadrature or truncation self-check exceeded its tolerance."""


class ResourceError(ShiftconvError, MemoryError):
    """Refused allocation; carries the estimated requirement in bytes."""

    def __init__(self, message, required_bytes=None):
        super().__init__(message)
        self.required_bytes = required_bytes


class CertificateError(ShiftconvError, ValueError):
    """Inputs for which the documented truncation certificate is invalid."""
