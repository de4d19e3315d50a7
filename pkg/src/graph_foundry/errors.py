"""Exception types shared across the package."""


class GraphFoundryError(Exception):
    """Base class for all package errors."""


class RangeError(GraphFoundryError, ValueError):
    """A generator argument is outside its supported range."""


class SizeLimitError(GraphFoundryError, ValueError):
    """An instance is too large for the exact solver."""


class GenerationExhaustedError(GraphFoundryError):
    """Could not reach the requested number of unique instances within the retry budget."""


class ContractViolationError(GraphFoundryError):
    """A caller violated a precondition (task mismatch, infeasible solution, ...)."""


class OracleBugError(GraphFoundryError):
    """A solution scored strictly better than the oracle optimum.

    This can only mean a bug in the oracle or in the objective; it must
    never be swallowed or clamped.
    """
