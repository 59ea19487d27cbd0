"""Exception types shared across the package.

Every failure the solver can diagnose maps to one of these classes so that
callers (and the CLI exit-code logic) can distinguish bad input from a
numerical breakdown without parsing message strings.
"""

from __future__ import annotations


class PlasmaSkinError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(PlasmaSkinError, ValueError):
    """Raised when user-supplied parameters are outside the model's domain."""


class ConvergenceError(PlasmaSkinError, ArithmeticError):
    """Raised when an iterative procedure fails to reach its tolerance."""


class CountMismatchError(ConvergenceError):
    """Raised when located spectrum zeros disagree with the winding count."""


class BranchError(PlasmaSkinError, ArithmeticError):
    """Raised when a continuous logarithm branch cannot be established."""


class DomainEvaluationError(PlasmaSkinError, ValueError):
    """Raised when a function is evaluated where it has no defined value."""
