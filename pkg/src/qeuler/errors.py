"""Exception hierarchy shared by every module.

All errors derive from :class:`QEulerError`; the CLI maps them to exit code 3.
"""

from __future__ import annotations


class QEulerError(Exception):
    """Base class for computation errors."""


class SeriesOrderError(QEulerError, ValueError):
    """Two truncated series with different orders were combined."""


class NonInvertibleError(QEulerError, ZeroDivisionError):
    """A truncated series with zero constant term was inverted."""


class DegenerateParameterError(QEulerError, ValueError):
    """A generating-function denominator has a vanishing constant term."""


class DomainError(QEulerError, ValueError):
    pass


class PathError(QEulerError, TypeError):
    """Parameters are not admissible on the requested (exact/numeric) path."""


class DivergenceError(QEulerError, ValueError):
    """The requested series does not converge for these parameters."""


class UnsupportedFormError(QEulerError, ValueError):
    pass


class PreconditionError(QEulerError, ValueError):
    pass


class ReductionError(QEulerError, ValueError):
    """A rational is not p-integral and cannot be reduced mod p^M."""


class BudgetError(QEulerError, RuntimeError):
    def __init__(self, message: str, max_level: int | None = None):
        super().__init__(message)
        self.max_level = max_level
