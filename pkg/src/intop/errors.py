"""Exception types shared across the package.

Numerical failures derive from NumericalError so the CLI can map them to a
distinct exit code; bad arguments stay plain ValueError.
"""

__all__ = [
    "NumericalError",
    "QuadratureAccuracyError",
    "IllConditionedError",
    "PoleEvaluationError",
    "NonContractionError",
    "SingularDesignError",
    "OracleError",
]


class NumericalError(Exception):
    """A computation failed to meet its accuracy or stability contract."""


class QuadratureAccuracyError(NumericalError):
    """An integration-matrix entry did not converge to the entry tolerance."""


class IllConditionedError(NumericalError):
    """Eigenvector matrix too ill-conditioned to use as a function basis."""


class PoleEvaluationError(NumericalError):
    """A scalar symbol evaluated to a non-finite value at an eigenvalue."""


class NonContractionError(NumericalError):
    """Fixed-point iteration is diverging; shrink the interval and restart."""


class SingularDesignError(NumericalError):
    """The inverse design map hit a zero diagonal factor."""


class OracleError(NumericalError):
    """Reference quadrature failed to converge within its depth budget."""
