"""Exception types shared across the library."""


class OrdextError(Exception):
    """Base class for all library errors."""


class ParameterError(OrdextError, ValueError):
    """A parameter record violates its invariants (e.g. sigma <= 0)."""


class DomainError(OrdextError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InputError(OrdextError, ValueError):
    """User-supplied data is malformed (empty sample, unordered pairs, ...)."""


class BoundaryError(OrdextError, ValueError):
    """Evaluation requested exactly on a branch boundary where the result
    is one-sided; the caller should perturb the point."""


class NumericError(OrdextError, RuntimeError):
    """A numeric routine failed to converge.

    Carries the tolerance actually achieved, when known.
    """

    def __init__(self, message, achieved_tol=None):
        super().__init__(message)
        self.achieved_tol = achieved_tol
