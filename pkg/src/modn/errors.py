"""Exception types shared across the package.

Everything raised on purpose derives from ModnError so callers can catch
one base class.  Input mistakes (bad modulus, out-of-range component
index, parameters outside a guaranteed-accuracy envelope) are kept
separate from numerical failures (series that refused to converge,
truncation budgets exceeded, overflow) because the command-line tool
maps the two groups to different exit codes.
"""

from __future__ import annotations


class ModnError(Exception):
    """Base class for all errors raised by this package."""


class InvalidModulusError(ModnError, ValueError):
    """Modulus n must be an integer >= 1."""


class ComponentIndexError(ModnError, ValueError):
    """Component index k must satisfy 0 <= k < n."""


class UnsafeParameterError(ModnError, ValueError):
    """Inputs fall outside the range where accuracy is guaranteed."""


class EvaluationError(ModnError, ArithmeticError):
    """A user-supplied function returned a non-finite value."""


class NonConvergenceError(ModnError, ArithmeticError):
    """A series failed to meet its tolerance within the term budget."""

    def __init__(self, message: str, last_term: float | None = None):
        super().__init__(message)
        self.last_term = last_term


class TruncationError(ModnError, ArithmeticError):
    """A truncated state leaks too much weight past the cutoff."""

    def __init__(self, message: str, suggested_dim: int | None = None):
        super().__init__(message)
        self.suggested_dim = suggested_dim


class DegenerateNormalizationError(ModnError, ValueError):
    """The requested state has zero norm (alpha = 0 with k >= 1)."""


class UnnormalizedStateError(ModnError, ValueError):
    """An operation requires a unit-norm state and got something else."""


class UnsupportedFormulaError(ModnError, ValueError):
    """A closed form is only valid for a different modulus."""


class HermiteRangeError(ModnError, ArithmeticError):
    """Hermite recurrence overflowed; reduce the order or |x|."""
