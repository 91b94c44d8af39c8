"""quiverlab: exact workbench for ice quivers and cluster seeds.

Construct ice quivers from reduced words, mutate and reduce them, search for
reddening sequences, test upper-cluster membership through one-step Laurent
checks, and verify seed realizations by exact flag-minor identities.
"""

from .errors import (
    ClosureBoundError,
    ConventionMismatchError,
    EmptyRichardsonError,
    ExprSyntaxError,
    FrozenVertexError,
    MembershipPreconditionError,
    NonReducedWordError,
    NotFrozenError,
    QuiverlabError,
    SizeGuardError,
    StarfishRankError,
)
from .exact import (
    LaurentPolynomial,
    Poly,
    RationalFunction,
    arith,
    parse_expression,
    poly_gcd,
    variables,
)

__all__ = [
    "ClosureBoundError",
    "ConventionMismatchError",
    "EmptyRichardsonError",
    "ExprSyntaxError",
    "FrozenVertexError",
    "MembershipPreconditionError",
    "NonReducedWordError",
    "NotFrozenError",
    "QuiverlabError",
    "SizeGuardError",
    "StarfishRankError",
    "LaurentPolynomial",
    "Poly",
    "RationalFunction",
    "arith",
    "parse_expression",
    "poly_gcd",
    "variables",
]
