"""Shared exception types.

Everything domain-level derives from QuiverlabError so the command line can
map any of them to exit code 1.  They also subclass ValueError because most
of them really are bad-argument complaints.
"""

__all__ = [
    "QuiverlabError",
    "ExprSyntaxError",
    "FrozenVertexError",
    "NotFrozenError",
    "NonReducedWordError",
    "EmptyRichardsonError",
    "StarfishRankError",
    "MembershipPreconditionError",
    "ClosureBoundError",
    "SizeGuardError",
    "ConventionMismatchError",
]


class QuiverlabError(ValueError):
    """Base class for all domain errors raised by this package."""


class ExprSyntaxError(QuiverlabError):
    """Expression string could not be parsed."""


class FrozenVertexError(QuiverlabError):
    """Mutation (or re-freezing) requested at a frozen vertex."""


class NotFrozenError(QuiverlabError):
    """Deletion requested at a vertex that is not frozen."""


class NonReducedWordError(QuiverlabError):
    """A word was required to be reduced and is not."""


class EmptyRichardsonError(QuiverlabError):
    """The pair (v, w) is not Bruhat-comparable, so the stratum is empty."""


class StarfishRankError(QuiverlabError):
    """Exchange matrix is rank deficient: starfish hypothesis violated."""


class MembershipPreconditionError(QuiverlabError):
    """A membership precondition failed; carries the failing ring names."""

    def __init__(self, message, failing=()):
        super().__init__(message)
        self.failing = tuple(failing)


class ClosureBoundError(QuiverlabError):
    """Mutation closure exceeded its seed bound (infinite type suspected)."""


class SizeGuardError(QuiverlabError):
    """Input too large for an intentionally bounded exhaustive routine."""


class ConventionMismatchError(QuiverlabError):
    """Minor realization failed validation; try the transposed convention."""
