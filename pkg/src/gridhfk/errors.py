"""Exception taxonomy shared by the whole package.

Input-validation errors subclass ``GridInputError`` (CLI exit code 2),
resource refusals subclass ``ResourceError`` (exit code 3), and internal
consistency failures subclass ``InternalConsistencyError`` (exit code 4).
An internal-consistency failure always indicates a pipeline bug, never
bad user data.
"""

from __future__ import annotations


class GridHFKError(Exception):
    """Base class for all package errors."""


class GridInputError(GridHFKError, ValueError):
    """Invalid user-supplied data (grids, scripts, names, arguments)."""


class NotAPermutation(GridInputError):
    pass


class SharedCell(GridInputError):
    pass


class MultiComponentLink(GridInputError):
    pass


class IllegalMove(GridInputError):
    pass


class UnknownName(GridInputError):
    pass


class EvenN(GridInputError):
    pass


class AsymmetricPolynomial(GridInputError):
    pass


class ResourceError(GridHFKError, RuntimeError):
    """A configured size or memory bound refused the computation."""


class SizeBoundExceeded(ResourceError):
    pass


class MemoryBudgetExceeded(ResourceError):
    pass


class InternalConsistencyError(GridHFKError, RuntimeError):
    """The pipeline contradicted itself; indicates a bug."""


class InexactDivision(InternalConsistencyError):
    """Euler characteristic not divisible by (1 - 1/t)^(n-1)."""


class InexactFactorization(InternalConsistencyError):
    """Tilde homology not divisible by the rank-2 tensor factor."""


class InconsistentSlices(InternalConsistencyError):
    pass


class NotACycle(InternalConsistencyError):
    pass


class BigradingMismatch(GridInputError):
    pass


class ChainMapViolation(InternalConsistencyError):
    pass


class GradingMismatch(InternalConsistencyError):
    pass
