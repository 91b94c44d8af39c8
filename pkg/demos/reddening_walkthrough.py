"""
Hunting a reddening sequence
============================

Frame a quiver, watch c-vectors flip sign, and let the search find a
mutation sequence that turns every mutable vertex red.
"""

from quiverlab.coxeter import DynkinDiagram
from quiverlab.quivers import find_reddening, framed, gls_quiver, is_all_red, mutate_framed

A4 = DynkinDiagram.from_label("A4")
q = gls_quiver(A4, (1, 2, 3, 1, 2, 4, 3))
print("quiver:", q.n, "vertices,", len(q.mutable_vertices), "mutable")

# framing adds one frozen companion per mutable vertex; the c-vector of a
# mutable vertex lives in the companion block and starts green (all >= 0)
state = framed(q)
for j in sorted(q.mutable_vertices):
    print(f"  vertex {j}: c = {state.c_vector(j)}  [{state.vertex_status(j)}]")

# one mutation turns its own vertex red
state = mutate_framed(state, 1)
print("after mu_1:", {j: state.vertex_status(j) for j in sorted(q.mutable_vertices)})

# the search returns a sequence after which every mutable vertex is red
seq = find_reddening(q, max_depth=20)
print("reddening sequence:", seq)

replay = framed(q)
for k in seq:
    replay = mutate_framed(replay, k)
print("replayed; all red:", is_all_red(replay))
for j in sorted(q.mutable_vertices):
    print(f"  vertex {j}: c = {replay.c_vector(j)}  [{replay.vertex_status(j)}]")

# not every quiver has one: the triangle with doubled arrows famously
# keeps at least one green vertex forever, and the bounded search reports
# the failure honestly
from quiverlab.quivers import quiver_from_arrows

markov = quiver_from_arrows(3, set(), [(1, 2, 2), (2, 3, 2), (3, 1, 2)])
print("doubled triangle, depth 12:", find_reddening(markov, max_depth=12))
