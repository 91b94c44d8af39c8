"""
Seeds, exchange relations, and the Laurent property
===================================================
"""

from quiverlab.quivers import quiver_from_arrows
from quiverlab.seeds import closure, initial_seed, mutate_seed

# one arrow 1 -> 2, nothing frozen: the smallest interesting seed pattern
q = quiver_from_arrows(2, frozen=set(), arrows=[(1, 2, 1)])
seed = initial_seed(q)
print("initial cluster:", [str(f) for f in seed.cluster])

# each mutation swaps one variable for (m1 + m2) / old
path = [1, 2, 1, 2, 1]
for k in path:
    seed = mutate_seed(seed, k)
    print(f"mu_{k}:", [str(f) for f in seed.cluster])

# after the five steps above the initial cluster returns (up to order);
# this 5-periodicity is why the pattern below has exactly 5 distinct seeds
result = closure(initial_seed(q), max_seeds=50)
print("distinct seeds:", len(result.seeds))
print("distinct cluster variables:", sorted(result.variable_strings()))

# every variable of every seed is a Laurent polynomial in the initial
# cluster, even though the exchange relation divides at each step
from quiverlab.exact import parse_expression

for text in sorted(result.variable_strings()):
    assert parse_expression(text, nvars=2).is_laurent() is not None
print("all", len(result.variables), "variables are Laurent in x1, x2")

# frozen vertices join exchange monomials but are never mutated themselves
q3 = quiver_from_arrows(3, frozen={3}, arrows=[(1, 2, 1), (3, 1, 1)])
s3 = mutate_seed(initial_seed(q3), 1)
print("with frozen 3:", [str(f) for f in s3.cluster])
