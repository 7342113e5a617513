"""Error classes for parameter validation and computation failures."""

from typing import Any, Dict, Optional

from pydantic import ValidationError


class HybridCastError(Exception):
    """Base exception for hybridcast errors.

    All specific error types inherit from this class, so callers can
    catch every library failure with a single ``except`` clause.

    Attributes:
        message: Error message.
        details: Additional error details.
    """

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self):
        if self.details:
            return f"{self.message} | Details: {self.details}"
        return self.message


class InvalidParamsError(HybridCastError):
    """Raised when source, channel or split parameters are invalid.

    This exception occurs when a value is outside its admissible range,
    e.g. a non-positive variance, a correlation outside [0, 1), or a
    channel that is not physically degraded (n2 <= n1).

    Attributes:
        field_errors: Field-specific validation errors, keyed by the
            dotted location of the offending field.
    """

    def __init__(
        self,
        message: str,
        field_errors: Optional[Dict[str, str]] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message, details)
        self.field_errors = field_errors or {}

    def __str__(self):
        base = super().__str__()
        if self.field_errors:
            errors_str = ", ".join(
                f"{k}: {v}" for k, v in self.field_errors.items()
            )
            return f"{base} | Field errors: {errors_str}"
        return base


class DegeneratePowerSplitError(HybridCastError):
    """Raised when the power split makes transceiver constants undefined.

    At alpha1 = 0 the lattice second moment P' diverges. The closed-form
    region calculators still return the limit point; only the transceiver
    refuses it.

    Attributes:
        alpha1: The offending power split.
    """

    def __init__(
        self,
        message: str,
        alpha1: Optional[float] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message, details)
        self.alpha1 = alpha1

    def __str__(self):
        base = super().__str__()
        if self.alpha1 is not None:
            return f"{base} | alpha1={self.alpha1}"
        return base


class DimensionMismatchError(HybridCastError):
    """Raised when a vector does not match the lattice dimension.

    Attributes:
        expected: Expected vector length.
        actual: Received vector length.
    """

    def __init__(
        self,
        message: str,
        expected: Optional[int] = None,
        actual: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message, details)
        self.expected = expected
        self.actual = actual

    def __str__(self):
        base = super().__str__()
        if self.expected is not None and self.actual is not None:
            return f"{base} | expected {self.expected}, got {self.actual}"
        return base


class ConsistencyError(HybridCastError):
    """Raised when two independent computations of the same fact disagree.

    Used for the SNR threshold analysis, where the predicted winner of
    hybrid vs. Scheme A must match the winner observed from the closed
    forms.
    """


def from_validation_error(
    exc: ValidationError,
    message: Optional[str] = None
) -> InvalidParamsError:
    """Create an InvalidParamsError from a pydantic ValidationError.

    Args:
        exc: The pydantic validation error.
        message: Custom error message. If None, a summary naming the
            model is used.

    Returns:
        InvalidParamsError with one field error per violated constraint.
    """
    field_errors = {}
    for error in exc.errors():
        loc = error.get("loc", ()) or ("__root__",)
        msg = error.get("msg", "Validation error")
        field_name = ".".join(str(x) for x in loc)
        field_errors[field_name] = msg

    return InvalidParamsError(
        message or f"Invalid {exc.title} parameters",
        field_errors=field_errors,
        details={"model": exc.title, "error_count": exc.error_count()},
    )
