"""Semantic exception hierarchy shared across the package."""


class TailOrderError(Exception):
    """Base class for all package-specific errors."""


class DomainError(TailOrderError, ValueError):
    """An argument lies outside its mathematically valid domain."""


class WeightError(TailOrderError, ValueError):
    """A weight vector violates nonnegativity or normalization requirements."""


class LengthMismatchError(TailOrderError, ValueError):
    """Two vectors that must have equal length do not."""


class NotMajorizedError(TailOrderError, ValueError):
    """A precondition required one weight vector to majorize another."""


class NoDensityError(TailOrderError):
    """The distribution has no (known) density at the requested point."""


class UnsupportedFamilyError(TailOrderError, TypeError):
    """The operation only applies to named parametric families."""


class ConditionFailedError(TailOrderError):
    """A validated premise of a constructor failed on the check grid.

    Carries the name of the violated premise and a witness point.
    """

    def __init__(self, premise: str, witness, message: str = ""):
        self.premise = premise
        self.witness = witness
        super().__init__(message or f"premise {premise!r} failed at {witness!r}")


class QuadratureFailureError(TailOrderError, ArithmeticError):
    """Adaptive quadrature could not meet the requested tolerance."""


class SpecParseError(TailOrderError, ValueError):
    """A distribution spec (JSON object) could not be parsed."""
