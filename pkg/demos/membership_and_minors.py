"""
Membership tests and flag-minor seed checks
===========================================

Two independent certificates: the one-step Laurent test for membership in
the upper bound of a seed pattern, and exact minor identities showing that
a word's seed really is realized by flag minors of a unitriangular matrix.
"""

from quiverlab.coxeter import DynkinDiagram, identity_element, longest_element
from quiverlab.exact import parse_expression
from quiverlab.minors import (
    random_unitriangular,
    richardson_denominator,
    verify_exchange_identities,
)
from quiverlab.quivers import quiver_from_arrows
from quiverlab.seeds import closure, initial_seed, localization_certificate, starfish_membership

q = quiver_from_arrows(2, frozen=set(), arrows=[(1, 2, 1)])

# every closure variable must pass: it lies in every adjacent Laurent ring
for text in sorted(closure(initial_seed(q), max_seeds=50).variable_strings()):
    verdict = starfish_membership(q, parse_expression(text, nvars=2))
    print(f"{text:24s} member={verdict.member}")

# a non-member is rejected with the names of the rings that refused it
bad = parse_expression("1/(1+x1)", nvars=2)
verdict = starfish_membership(q, bad)
print("1/(1+x1) member =", verdict.member, " failing:", list(verdict.failing))

# freezing vertex 2 and inverting its variable can repair membership;
# the certificate is the least power of x2 that does it
f = parse_expression("(1+x2)/(x1*x2)", nvars=2)
print("localization exponent for (1+x2)/(x1*x2):",
      localization_certificate(q, 2, f, d_max=5))

# now the minors.  For a reduced word the k-th cluster variable is a minor
# of a generic unitriangular matrix, and each exchange relation becomes a
# polynomial identity among minors.  verify both symbolically and on
# random rational matrices
A4 = DynkinDiagram.from_label("A4")
report = verify_exchange_identities(A4, (1, 2, 3, 4, 1, 2, 3, 1, 2, 1), trials=25)
for entry in report.entries:
    tag = "ok" if entry.ok else "FAIL"
    print(f"  vertex {entry.vertex}: {tag} ({entry.trials_run} numeric trials)")
print("all identities hold:", report.all_ok)

# the product of generalized minors cutting out an open cell; nonzero at a
# random point, identically 1 for the trivial pair
g = random_unitriangular(5, seed=7)
e = identity_element(A4)
w0 = longest_element(A4)
print("cell denominator at a random matrix:", richardson_denominator(e, w0, g))
print("trivial pair gives:", richardson_denominator(e, e, g))
