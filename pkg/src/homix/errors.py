"""Exception hierarchy shared by every homix module."""

from __future__ import annotations


class HomixError(Exception):
    """Base class for all library errors."""


class InvalidGraph(HomixError, ValueError):
    pass


class InvalidWalk(HomixError, ValueError):
    pass


class NotHomomorphism(HomixError, ValueError):
    pass


class Acyclic(HomixError):
    """Raised by girth_cycle on a forest."""


class Unreachable(HomixError):
    pass


class BudgetExceeded(HomixError):
    """A search ran out of nodes or storage before finishing.

    ``partial`` carries whatever count or result was reached.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class UnsatWithinBudget(BudgetExceeded):
    pass


class NoPath(HomixError):
    pass


class TargetUnsuitable(HomixError, ValueError):
    pass


class ImproperColouring(HomixError, ValueError):
    pass


class NotNonFlat(HomixError, ValueError):
    pass


class ClaimViolation(HomixError):
    """An internal invariant that the construction guarantees did not hold."""
