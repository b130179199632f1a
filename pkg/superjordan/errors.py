"""
Error types for the superjordan package
Every failure that is not a verdict (verdicts live in Report) raises one of these
"""

from typing import Any, Dict, Optional


class SuperJordanError(Exception):
    """Base class for all errors raised by the package."""


class InvalidParameter(SuperJordanError):
    """Bad user-facing input: n out of range, unknown case, malformed JSON."""


class DimensionMismatch(SuperJordanError):
    """An element or map does not fit the basis it is used with."""


class NonHomogeneousError(SuperJordanError):
    """A homogeneous element was required."""


class QuadraticTermError(SuperJordanError):
    """
    Two affine forms that both carry unknowns were multiplied.

    In a symbolic lift this can only happen when a radical coordinate is
    multiplied by another radical coordinate, which N² = 0 forbids.
    """


class NotInSpan(SuperJordanError):
    """A matrix or vector has a nonzero residual against a basis."""

    def __init__(self, message: str, residual: Optional[Any] = None):
        super().__init__(message)
        self.residual = residual


class NotAnIdeal(SuperJordanError):
    """The proposed ideal is not closed under multiplication by the algebra."""


class DecompositionIncomplete(SuperJordanError):
    """Peirce eigenspaces do not add up to the whole space."""


class IncoherentXi(SuperJordanError):
    """theta_i - theta_j = xi_ji - xi_ij fails for some pair."""

    def __init__(self, message: str, pair: Optional[tuple] = None):
        super().__init__(message)
        self.pair = pair


class NoSolution(SuperJordanError):
    """The complement system is inconsistent; `certificate` holds the residual."""

    def __init__(self, message: str, certificate: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.certificate = certificate or {}
