"""Exception types shared across the package."""


class HypgrowthError(Exception):
    """Base class for all package errors."""


class InvalidInputError(HypgrowthError, ValueError):
    """Malformed input: mixed model spaces, bad matrix literals, bad files."""


class DegenerateTriangleError(HypgrowthError, ValueError):
    """Triangle operation on a triangle with coincident vertices."""


class PreconditionError(HypgrowthError, ValueError):
    """A stated geometric precondition does not hold for the given input."""


class ClassError(HypgrowthError, ValueError):
    """Operation requires an isometry of a different classification."""


class AsymptoticAxesError(HypgrowthError, ValueError):
    """Axis-separation query on axes that share an ideal endpoint."""


class ElementaryGroupError(HypgrowthError, ValueError):
    """Free-pair pipeline ran on a generating set fixing an axis endpoint pair."""


class DescentContractError(HypgrowthError, RuntimeError):
    """A descent step violated its guaranteed size drop; delta is misconfigured."""


class IterationLimitError(HypgrowthError, RuntimeError):
    """Descent exhausted its iteration budget.  Carries the partial trace."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class BudgetError(HypgrowthError, RuntimeError):
    """Ball enumeration exceeded its memory budget.  Carries the partial census."""

    def __init__(self, message, census=None):
        super().__init__(message)
        self.census = census
