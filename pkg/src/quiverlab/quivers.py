"""Ice quivers: mutation, construction from reduced words, reduction, framing.

An ice quiver is stored as a full skew-symmetric integer matrix b together
with a set of frozen vertex ids (1-based).  b[i][j] > 0 means b[i][j] arrows
from i+1 to j+1.  Arrows between frozen vertices are kept in the matrix but
frozen vertices are never mutated."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .coxeter import DynkinDiagram, is_reduced
from .errors import (
    FrozenVertexError,
    NonReducedWordError,
    NotFrozenError,
    SizeGuardError,
)

__all__ = [
    "IceQuiver",
    "quiver_from_arrows",
    "quiver_to_obj",
    "quiver_from_obj",
    "quiver_to_text",
    "quiver_from_text",
    "gls_quiver",
    "freeze",
    "delete_frozen",
    "ReductionScript",
    "apply_reduction",
    "exchange_rank",
    "FramedState",
    "framed",
    "mutate_framed",
    "is_all_red",
    "find_reddening",
    "quiver_isomorphic",
    "canonical_form",
    "preprojective_presentation",
    "Presentation",
]


def _pos(x):
    return x if x > 0 else 0


@dataclass(frozen=True)
class IceQuiver:
    """Quiver with frozen vertices, as a skew-symmetric arrow-count matrix."""

    n: int
    frozen: frozenset
    b: tuple

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        object.__setattr__(self, "frozen", frozenset(self.frozen))
        if not all(isinstance(v, int) and 1 <= v <= self.n for v in self.frozen):
            raise ValueError("frozen ids must lie in 1..n")
        b = self.b
        if len(b) != self.n or any(len(row) != self.n for row in b):
            raise ValueError("matrix shape must be n x n")
        for i in range(self.n):
            for j in range(self.n):
                if not isinstance(b[i][j], int):
                    raise ValueError("matrix entries must be integers")
                if b[i][j] != -b[j][i]:
                    raise ValueError("matrix must be skew-symmetric")

    @property
    def mutable_vertices(self) -> tuple:
        return tuple(v for v in range(1, self.n + 1) if v not in self.frozen)

    def is_frozen(self, k: int) -> bool:
        return k in self.frozen

    def check_vertex(self, k: int):
        if not (isinstance(k, int) and 1 <= k <= self.n):
            raise ValueError(f"vertex {k} out of range 1..{self.n}")

    def arrows(self) -> tuple:
        """All arrows as (src, tgt, multiplicity), sorted."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if self.b[i][j] > 0:
                    out.append((i + 1, j + 1, self.b[i][j]))
        return tuple(sorted(out))

    def mutate(self, k: int) -> "IceQuiver":
        """Matrix mutation at a mutable vertex."""
        self.check_vertex(k)
        if k in self.frozen:
            raise FrozenVertexError(f"mutation at frozen vertex {k}")
        b = self.b
        c = k - 1
        new = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                if i == c or j == c:
                    row.append(-b[i][j])
                else:
                    row.append(
                        b[i][j]
                        + _pos(b[i][c]) * _pos(b[c][j])
                        - _pos(-b[i][c]) * _pos(-b[c][j])
                    )
            new.append(tuple(row))
        return IceQuiver(self.n, self.frozen, tuple(new))

    def degree_profile(self, k: int) -> tuple:
        """Relabeling-invariant local signature of a vertex."""
        row = self.b[k - 1]
        outs = tuple(sorted(x for x in row if x > 0))
        ins = tuple(sorted(-x for x in row if x < 0))
        return (k in self.frozen, outs, ins)


def quiver_from_arrows(n: int, frozen, arrows) -> IceQuiver:
    """Build a quiver from explicit (src, tgt, mult) triples."""
    b = [[0] * n for _ in range(n)]
    for src, tgt, mult in arrows:
        if not (1 <= src <= n and 1 <= tgt <= n):
            raise ValueError(f"arrow ({src},{tgt}) out of range")
        if src == tgt:
            raise ValueError("loops are not allowed")
        if mult < 1:
            raise ValueError("arrow multiplicity must be >= 1")
        if b[src - 1][tgt - 1] != 0 or b[tgt - 1][src - 1] != 0:
            raise ValueError(f"duplicate or opposite arrow for pair ({src},{tgt})")
        b[src - 1][tgt - 1] = mult
        b[tgt - 1][src - 1] = -mult
    return IceQuiver(n, frozenset(frozen), tuple(tuple(r) for r in b))


# ---------------------------------------------------------------------------
# canonical JSON file format


def quiver_to_obj(q: IceQuiver) -> dict:
    return {
        "type": "ice_quiver",
        "vertices": [
            {"id": v, "frozen": v in q.frozen} for v in range(1, q.n + 1)
        ],
        "arrows": [list(a) for a in q.arrows()],
    }


def quiver_from_obj(obj) -> IceQuiver:
    if not isinstance(obj, dict) or obj.get("type") != "ice_quiver":
        raise ValueError('quiver object must have "type": "ice_quiver"')
    vertices = obj.get("vertices")
    arrows = obj.get("arrows")
    if not isinstance(vertices, list) or not isinstance(arrows, list):
        raise ValueError("quiver object needs vertex and arrow lists")
    ids = []
    frozen = set()
    for item in vertices:
        if not isinstance(item, dict) or "id" not in item or "frozen" not in item:
            raise ValueError("vertex entries need id and frozen fields")
        if not isinstance(item["id"], int) or not isinstance(item["frozen"], bool):
            raise ValueError("vertex id must be int, frozen must be bool")
        ids.append(item["id"])
        if item["frozen"]:
            frozen.add(item["id"])
    n = len(ids)
    if sorted(ids) != list(range(1, n + 1)):
        raise ValueError("vertex ids must be exactly 1..n")
    triples = []
    for item in arrows:
        if (
            not isinstance(item, list)
            or len(item) != 3
            or not all(isinstance(x, int) for x in item)
        ):
            raise ValueError("arrows must be [src, tgt, mult] integer triples")
        triples.append(tuple(item))
    return quiver_from_arrows(n, frozen, triples)


def quiver_to_text(q: IceQuiver) -> str:
    return json.dumps(quiver_to_obj(q), indent=2) + "\n"


def quiver_from_text(text: str) -> IceQuiver:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from exc
    return quiver_from_obj(obj)


# ---------------------------------------------------------------------------
# construction from a reduced word


def gls_quiver(diagram: DynkinDiagram, word) -> IceQuiver:
    """Ice quiver attached to a reduced word.

    Vertices are the positions 1..len(word).  Write k+ for the next position
    after k carrying the same letter (absent when there is none); a position
    is frozen exactly when k+ is absent.  Arrows: a horizontal arrow k -> k+
    for every k with a successor, and an ordinary arrow l -> k for positions
    k < l with adjacent letters such that l < k+ <= l+, where an absent
    successor counts as larger than every position.

    The ordinary-arrow condition is the interval criterion: the later
    position must fall strictly between k and its successor, and k's letter
    must repeat no later than l's does.  Every initial exchange relation of
    the resulting quiver then holds as an identity of flag minors, which
    pins this rule down; see the verification layer.
    """
    word = tuple(word)
    for a in word:
        diagram.check_letter(a)
    if not is_reduced(diagram, word):
        raise NonReducedWordError(f"word {word} is not reduced")
    length = len(word)
    absent = length + 1
    successor = []
    for k in range(1, length + 1):
        nxt = next(
            (m for m in range(k + 1, length + 1) if word[m - 1] == word[k - 1]),
            absent,
        )
        successor.append(nxt)
    frozen = {k for k in range(1, length + 1) if successor[k - 1] == absent}
    arrows = []
    for k in range(1, length + 1):
        if successor[k - 1] != absent:
            arrows.append((k, successor[k - 1], 1))
        for l in range(k + 1, length + 1):
            if not diagram.adjacent(word[k - 1], word[l - 1]):
                continue
            if l < successor[k - 1] <= successor[l - 1]:
                arrows.append((l, k, 1))
    return quiver_from_arrows(length, frozen, arrows)


# ---------------------------------------------------------------------------
# cluster reduction: mutate, then freeze, then delete frozen vertices


def freeze(q: IceQuiver, k: int) -> IceQuiver:
    q.check_vertex(k)
    if k in q.frozen:
        raise FrozenVertexError(f"vertex {k} is already frozen")
    return IceQuiver(q.n, q.frozen | {k}, q.b)


def delete_frozen(q: IceQuiver, f: int) -> IceQuiver:
    """Remove a frozen vertex; ids above it shift down by one."""
    q.check_vertex(f)
    if f not in q.frozen:
        raise NotFrozenError(f"vertex {f} is not frozen; cannot delete")
    keep = [v for v in range(1, q.n + 1) if v != f]
    b = tuple(
        tuple(q.b[i - 1][j - 1] for j in keep) for i in keep
    )
    frozen = frozenset(v if v < f else v - 1 for v in q.frozen if v != f)
    return IceQuiver(q.n - 1, frozen, b)


@dataclass(frozen=True)
class ReductionScript:
    """Mutations, then freezes, then deletions of frozen vertices, in order."""

    mutations: tuple = ()
    freezes: frozenset = field(default_factory=frozenset)
    deletions: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "mutations", tuple(self.mutations))
        object.__setattr__(self, "freezes", frozenset(self.freezes))
        object.__setattr__(self, "deletions", frozenset(self.deletions))

    @classmethod
    def from_obj(cls, obj) -> "ReductionScript":
        if not isinstance(obj, dict):
            raise ValueError("reduction script must be an object")
        known = {"mutations", "freezes", "deletions"}
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown script fields: {sorted(extra)}")
        def ints(key):
            value = obj.get(key, [])
            if not isinstance(value, list) or not all(
                isinstance(x, int) for x in value
            ):
                raise ValueError(f"script field {key} must be an integer list")
            return value
        return cls(tuple(ints("mutations")), frozenset(ints("freezes")),
                   frozenset(ints("deletions")))

    def to_obj(self) -> dict:
        return {
            "mutations": list(self.mutations),
            "freezes": sorted(self.freezes),
            "deletions": sorted(self.deletions),
        }


def apply_reduction(q: IceQuiver, script: ReductionScript) -> IceQuiver:
    for k in script.mutations:
        q = q.mutate(k)
    for k in sorted(script.freezes):
        q = freeze(q, k)
    for f in sorted(script.deletions, reverse=True):
        q = delete_frozen(q, f)
    return q


# ---------------------------------------------------------------------------
# exchange matrix rank


def exchange_rank(q: IceQuiver) -> int:
    """Rank over the rationals of the n x (#mutable) exchange matrix."""
    cols = [k - 1 for k in q.mutable_vertices]
    if not cols:
        return 0
    rows = [[Fraction(q.b[i][j]) for j in cols] for i in range(q.n)]
    rank = 0
    for col in range(len(cols)):
        pivot = next(
            (r for r in range(rank, q.n) if rows[r][col] != 0), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(q.n):
            if r != rank and rows[r][col]:
                factor = rows[r][col] / pv
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# framed quivers and c-vectors


@dataclass(frozen=True)
class FramedState:
    """Framed quiver tracking c-vectors of the mutable vertices.

    The extended quiver appends one frozen copy vertex per mutable vertex
    (after the original ids, in ascending order of the originals) with a
    single arrow original -> copy.  The c-vector of mutable vertex j is the
    row of j in the extended matrix restricted to the copy columns."""

    quiver: IceQuiver
    original_n: int
    mutables: tuple
    history: tuple = ()

    def c_vector(self, j: int) -> tuple:
        if j not in self.mutables:
            raise ValueError(f"vertex {j} is not mutable in the framed base")
        row = self.quiver.b[j - 1]
        return tuple(row[self.original_n + i] for i in range(len(self.mutables)))

    @property
    def c_matrix(self) -> tuple:
        """One column per mutable vertex, in mutables order."""
        vecs = [self.c_vector(j) for j in self.mutables]
        m = len(self.mutables)
        return tuple(tuple(vecs[j][i] for j in range(m)) for i in range(m))

    def vertex_status(self, j: int) -> str:
        c = self.c_vector(j)
        nonneg = all(x >= 0 for x in c)
        nonpos = all(x <= 0 for x in c)
        if nonneg and any(x > 0 for x in c):
            return "green"
        if nonpos and any(x < 0 for x in c):
            return "red"
        raise RuntimeError(
            f"sign coherence violated at vertex {j}: c-vector {c}"
        )

    def green_vertices(self) -> tuple:
        return tuple(j for j in self.mutables if self.vertex_status(j) == "green")

    def red_vertices(self) -> tuple:
        return tuple(j for j in self.mutables if self.vertex_status(j) == "red")


def framed(q: IceQuiver) -> FramedState:
    mutables = q.mutable_vertices
    m = len(mutables)
    n = q.n
    size = n + m
    b = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            b[i][j] = q.b[i][j]
    for idx, j in enumerate(mutables):
        b[j - 1][n + idx] = 1
        b[n + idx][j - 1] = -1
    frozen = q.frozen | set(range(n + 1, size + 1))
    ext = IceQuiver(size, frozenset(frozen), tuple(tuple(r) for r in b))
    return FramedState(ext, n, mutables, ())


def mutate_framed(state: FramedState, k: int) -> FramedState:
    if k not in state.mutables:
        raise FrozenVertexError(f"vertex {k} is not mutable in the framed quiver")
    new = FramedState(
        state.quiver.mutate(k), state.original_n, state.mutables,
        state.history + (k,),
    )
    for j in new.mutables:
        new.vertex_status(j)  # raises on a sign-coherence violation
    return new


def is_all_red(state: FramedState) -> bool:
    return all(
        state.vertex_status(j) == "red" for j in state.mutables
    )


def _framed_key(state: FramedState):
    # only the mutable and copy rows/columns drive the c-vector dynamics
    idx = [j - 1 for j in state.mutables]
    idx += list(range(state.original_n, state.quiver.n))
    b = state.quiver.b
    return tuple(tuple(b[i][j] for j in idx) for i in idx)


def find_reddening(q: IceQuiver, max_depth: int):
    """Bounded search for a mutation sequence turning every c-vector red.

    Runs iterative deepening twice: first over green moves only (finds the
    short sequences that exist in practice), then over all moves with green
    branches tried first.  States are deduplicated by the part of the framed
    matrix that the dynamics depend on.  Returns None when no sequence of
    length <= max_depth exists in the explored space; ties are broken by
    vertex index, so results are deterministic.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    if not q.mutable_vertices:
        return ()
    start = framed(q)
    if is_all_red(start):
        return ()

    def green_moves(state):
        return state.green_vertices()

    def green_first(state):
        return state.green_vertices() + state.red_vertices()

    for moves in (green_moves, green_first):
        for depth in range(1, max_depth + 1):
            best = {_framed_key(start): 0}
            cut = False

            def dfs(state, g, limit):
                nonlocal cut
                for k in moves(state):
                    child = mutate_framed(state, k)
                    if is_all_red(child):
                        return (k,)
                    if g + 1 >= limit:
                        cut = True
                        continue
                    key = _framed_key(child)
                    if best.get(key, max_depth + 1) <= g + 1:
                        continue
                    best[key] = g + 1
                    rest = dfs(child, g + 1, limit)
                    if rest is not None:
                        return (k,) + rest
                return None

            found = dfs(start, 0, depth)
            if found is not None:
                return found
            if not cut:
                # search space exhausted below this depth; deepening is futile
                break
        else:
            continue
        if moves is green_first:
            # the full move set was exhausted: no sequence exists at all
            return None
    return None


# ---------------------------------------------------------------------------
# isomorphism and canonical forms


def quiver_isomorphic(q1: IceQuiver, q2: IceQuiver):
    """Frozen-preserving vertex bijection matching the matrices, or None."""
    if max(q1.n, q2.n) > 12:
        raise SizeGuardError("isomorphism search guarded to n <= 12")
    if q1.n != q2.n or len(q1.frozen) != len(q2.frozen):
        return None
    profiles1 = {v: q1.degree_profile(v) for v in range(1, q1.n + 1)}
    profiles2 = {v: q2.degree_profile(v) for v in range(1, q2.n + 1)}
    if sorted(profiles1.values()) != sorted(profiles2.values()):
        return None
    n = q1.n
    mapping = {}
    used = set()

    def extend(v):
        if v > n:
            return True
        for w in range(1, n + 1):
            if w in used or profiles1[v] != profiles2[w]:
                continue
            if any(
                q1.b[v - 1][u - 1] != q2.b[w - 1][mapping[u] - 1]
                for u in mapping
            ):
                continue
            mapping[v] = w
            used.add(w)
            if extend(v + 1):
                return True
            del mapping[v]
            used.remove(w)
        return False

    return dict(mapping) if extend(1) else None


def canonical_form(q: IceQuiver):
    """Relabeling-invariant key: exact minimum over frozen-respecting
    permutations when affordable, a permutation-invariant digest otherwise."""
    mut = q.mutable_vertices
    fro = tuple(sorted(q.frozen))
    if math.factorial(len(mut)) * math.factorial(len(fro)) <= 50000:
        best = None
        for pm in itertools.permutations(mut):
            for pf in itertools.permutations(fro):
                seq = pm + pf
                cand = tuple(
                    tuple(q.b[i - 1][j - 1] for j in seq) for i in seq
                )
                if best is None or cand < best:
                    best = cand
        return ("exact", len(mut), q.n, best)
    rows = sorted(
        (v in q.frozen, tuple(sorted(q.b[v - 1]))) for v in range(1, q.n + 1)
    )
    edge_kinds = sorted(
        (s in q.frozen, t in q.frozen, m) for s, t, m in q.arrows()
    )
    return ("digest", len(mut), q.n, tuple(rows), tuple(edge_kinds))


# ---------------------------------------------------------------------------
# doubled quiver with mesh relations

_GREEK = ("alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta")


@dataclass(frozen=True)
class Presentation:
    """Doubled quiver of a Dynkin diagram with one signed relation per vertex.

    Arrows come in pairs: name x: low -> high along each edge and x*: high ->
    low.  The relation at a vertex sums, over incident edges, the round trip
    through that edge: +(a a*) when the plain arrow comes in, -(a* a) when it
    goes out; a term (sign, left, right) denotes sign * (left after right).
    """

    diagram: DynkinDiagram
    arrows: tuple  # (name, src, tgt)
    relations: tuple  # per vertex: tuple of (sign, left_name, right_name)

    def relation_strings(self) -> tuple:
        out = []
        for terms in self.relations:
            if not terms:
                out.append("0 = 0")
                continue
            parts = []
            for sign, left, right in terms:
                text = f"{left} {right}"
                if not parts:
                    parts.append(text if sign > 0 else f"-{text}")
                else:
                    parts.append(f"+ {text}" if sign > 0 else f"- {text}")
            out.append(" ".join(parts) + " = 0")
        return tuple(out)


def preprojective_presentation(diagram: DynkinDiagram) -> Presentation:
    edges = diagram.edges
    if len(edges) > len(_GREEK):
        raise SizeGuardError("arrow naming supports at most 7 edges")
    arrows = []
    name_of = {}
    for idx, (a, b) in enumerate(edges):
        name = _GREEK[idx]
        arrows.append((name, a, b))
        arrows.append((name + "*", b, a))
        name_of[(a, b)] = name
    relations = []
    for v in diagram.vertices:
        terms = []
        for (a, b) in edges:
            name = name_of[(a, b)]
            if b == v:  # plain arrow comes into v: +(a a*)
                terms.append((1, name, name + "*"))
            elif a == v:  # plain arrow leaves v: -(a* a)
                terms.append((-1, name + "*", name))
        relations.append(tuple(terms))
    return Presentation(diagram, tuple(arrows), tuple(relations))
