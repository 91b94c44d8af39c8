"""
From reduced words to ice quivers
=================================

Build the quiver attached to a reduced word, poke at it with mutations,
and shrink it with a reduction script.
"""

from quiverlab.coxeter import DynkinDiagram, enumerate_reduced_words, longest_element
from quiverlab.quivers import (
    ReductionScript,
    apply_reduction,
    exchange_rank,
    gls_quiver,
)

A4 = DynkinDiagram.from_label("A4")

# a 7-letter reduced word; position k is frozen when its letter never repeats
word = (1, 2, 3, 1, 2, 4, 3)
q = gls_quiver(A4, word)
print("word:", word)
print("vertices:", q.n, "frozen:", sorted(q.frozen))
for src, dst, mult in q.arrows():
    print(f"  {src} -> {dst}" + (f"  (x{mult})" if mult != 1 else ""))

# mutation is an involution at every mutable vertex
m = q.mutate(1)
print("mutate at 1 changes the quiver:", m != q)
print("mutating again restores it:   ", m.mutate(1) == q)

# the rank of the exchange submatrix never moves under mutation
print("exchange rank:", exchange_rank(q), "(stable under mutation:",
      exchange_rank(m) == exchange_rank(q), ")")

# a reduction script freezes first, then deletes frozen vertices;
# remaining vertices are renumbered to stay contiguous
script = ReductionScript(mutations=(), freezes=(1,), deletions=(5,))
small = apply_reduction(q, script)
print("after freeze(1) + delete(5):", small.n, "vertices, frozen", sorted(small.frozen))

# every reduced word of the longest element gives a full-rank quiver
w0 = longest_element(A4)
words = enumerate_reduced_words(A4, w0)
print(len(words), "reduced words for the longest element; checking three of them")
for w in sorted(words)[:3]:
    qq = gls_quiver(A4, w)
    assert exchange_rank(qq) == len(qq.mutable_vertices)
    print(" ", w, "-> full rank", exchange_rank(qq))
