"""Exception hierarchy for frenet4.

Every error carries a ``category`` that the command line maps to an exit code,
and a ``details`` dict that is emitted verbatim by ``--error-json``.
"""

from typing import Any, Dict, FrozenSet, Optional


class Frenet4Error(Exception):
    """Base class for all frenet4 errors."""

    category = "usage"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": self.details,
        }


class SpecError(Frenet4Error):
    """A curve-spec file is malformed or violates its invariants."""


# Expressions


class ExprError(Frenet4Error):
    """Base class for expression parsing and evaluation errors."""


class ExprSyntaxError(ExprError):
    """The expression text does not match the grammar."""

    def __init__(self, message: str, offset: int, expected: FrozenSet[str]):
        super().__init__(message, offset=offset, expected=sorted(expected))
        self.offset = offset
        self.expected = expected

    def __str__(self) -> str:
        expected = ", ".join(repr(token) for token in sorted(self.expected))
        return f"{self.message} at offset {self.offset} (expected {expected})"


class UnknownFunctionError(ExprError):
    """A call names a function outside the grammar."""


class UnboundParameterError(ExprError):
    """A parameter has no binding in the environment."""


class ExprDomainError(ExprError):
    """Evaluation left the domain of an operation (sqrt of a negative, ...)."""


# Jets


class JetError(Frenet4Error):
    """Base class for jet arithmetic errors."""


class JetOrderMismatch(JetError):
    """Two jets of different order were combined."""


class JetDomainError(JetError):
    """A jet operation was applied outside its domain."""


# Geometry


class GeometryError(Frenet4Error):
    """Base class for errors raised by the geometric constructions."""

    category = "geometry"

    def __init__(self, message: str, t: Optional[float] = None, **details: Any):
        if t is not None:
            details["t"] = t
        super().__init__(message, **details)
        self.t = t


class NotRegular(GeometryError):
    """The speed of the curve vanishes at the evaluation point."""


class DegenerateCurvature(GeometryError):
    """κ or τ vanishes, so the 4D Frenet frame is not defined."""


class NotAHelix(GeometryError):
    """A construction that needs a W-curve received something else."""


class SingularMate(GeometryError):
    """The Bertrand offset makes K or L vanish."""


class SingularPoint(GeometryError):
    """The involute is evaluated at its cusp s = c."""


class VerificationError(Frenet4Error):
    """The theorem suite cannot run on the given input."""
