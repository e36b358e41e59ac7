"""Exception hierarchy.

Every failure mode callers are expected to branch on gets its own class;
in particular a blown search budget (BudgetExceededError) is never
conflated with an empty search result.
"""


class BiheytError(Exception):
    """Base class for all package errors."""


class InvalidPosetError(BiheytError):
    """A relation handed to an order-consuming operation is not a poset."""


class NotLatticeError(BiheytError):
    """The order has a pair without a meet or join; carries a witness pair."""


class NotDistributiveError(BiheytError):
    """Meet fails to distribute over join; carries a witness triple."""


class ResiduationFailureError(BiheytError):
    """No greatest (least) residual exists for some pair."""


class DegenerateAlgebraError(BiheytError):
    """The one-element algebra was passed where it is excluded."""


class InvalidCongruenceError(BiheytError):
    """A partition is not compatible with the operations."""


class RuleSyntaxError(BiheytError):
    """Rule/term text or JSON failed to parse; message points at the spot."""


class BudgetExceededError(BiheytError):
    """A configured resource cap was hit before the search finished.

    Raised instead of silently truncating: partial enumerations are never
    returned as if they were complete.
    """

    def __init__(self, message: str, *, spent: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.spent = spent
        self.cap = cap
