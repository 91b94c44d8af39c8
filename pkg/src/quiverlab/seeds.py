"""Seeds and the operations the workbench runs on them.

A seed is an ice quiver plus one exact rational function per vertex, written
in the initial variables x1..xn.  Mutation rewrites one entry through the
exchange relation; closure enumerates the whole mutation class; membership
in the upper bound is decided by the finite Laurent-ring intersection over
the initial seed and its one-step mutations.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from itertools import permutations

from .errors import (
    ClosureBoundError,
    FrozenVertexError,
    MembershipPreconditionError,
    NotFrozenError,
    StarfishRankError,
)
from .exact import RationalFunction, parse_expression, variables
from .quivers import (
    IceQuiver,
    delete_frozen,
    exchange_rank,
    freeze,
    quiver_from_obj,
    quiver_to_obj,
)

__all__ = [
    "Seed",
    "AlgebraFlavor",
    "initial_seed",
    "mutate_seed",
    "ClosureResult",
    "closure",
    "MembershipVerdict",
    "starfish_membership",
    "localization_certificate",
    "specialize_frozen",
    "seed_to_obj",
    "seed_from_obj",
]


@dataclass(frozen=True)
class Seed:
    """Ice quiver with a cluster of rational functions and a mutation path."""

    quiver: IceQuiver
    cluster: tuple
    history: tuple = ()

    def __post_init__(self):
        if len(self.cluster) != self.quiver.n:
            raise ValueError("cluster must have one entry per vertex")
        for entry in self.cluster:
            if not isinstance(entry, RationalFunction):
                raise ValueError("cluster entries must be rational functions")
            if entry.nvars != self.quiver.n:
                raise ValueError("cluster entries must use the seed's variables")

    @property
    def nvars(self) -> int:
        return self.quiver.n


class AlgebraFlavor(enum.Enum):
    """Whether frozen-vertex coefficients are invertible."""

    INVERTIBLE = "invertible"
    NON_INVERTIBLE = "non-invertible"

    @classmethod
    def parse(cls, text: str) -> "AlgebraFlavor":
        for flavor in cls:
            if flavor.value == text:
                return flavor
        raise ValueError(
            f"unknown flavor {text!r}; expected one of "
            f"{[f.value for f in cls]}"
        )


def initial_seed(q: IceQuiver) -> Seed:
    return Seed(q, variables(q.n), ())


def _exchange_monomials(q: IceQuiver, k: int, values) -> tuple:
    """The two sides of the exchange relation at k, as products of values."""
    n = q.n
    m1 = RationalFunction.one(values[0].nvars if values else n)
    m2 = m1
    for i in range(n):
        e = q.b[i][k - 1]
        if e > 0:
            m1 = m1 * values[i] ** e
        elif e < 0:
            m2 = m2 * values[i] ** (-e)
    return m1, m2


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Exchange the variable at k and mutate the quiver."""
    q = seed.quiver
    q.check_vertex(k)
    if k in q.frozen:
        raise FrozenVertexError(f"mutation at frozen vertex {k}")
    m1, m2 = _exchange_monomials(q, k, seed.cluster)
    new_var = (m1 + m2) / seed.cluster[k - 1]
    cluster = tuple(
        new_var if i == k - 1 else seed.cluster[i] for i in range(q.n)
    )
    return Seed(q.mutate(k), cluster, seed.history + (k,))


# ---------------------------------------------------------------------------
# mutation closure


@dataclass(frozen=True)
class ClosureResult:
    """Distinct seeds, distinct mutable-position variables, exchange edges."""

    seeds: tuple
    variables: tuple
    edges: tuple

    def variable_strings(self) -> tuple:
        return tuple(str(v) for v in self.variables)


def _seed_key(seed: Seed):
    """Canonical key under permutations of the mutable vertices."""
    q = seed.quiver
    n = q.n
    mut = q.mutable_vertices
    strs = tuple(str(c) for c in seed.cluster)
    best = None
    for pm in permutations(mut):
        sigma = list(range(n + 1))  # sigma[old] = new
        for old, new in zip(mut, pm):
            sigma[old] = new
        b2 = [[0] * n for _ in range(n)]
        c2 = [""] * n
        for i in range(1, n + 1):
            c2[sigma[i] - 1] = strs[i - 1]
            row = q.b[i - 1]
            target = b2[sigma[i] - 1]
            for j in range(1, n + 1):
                target[sigma[j] - 1] = row[j - 1]
        cand = (tuple(map(tuple, b2)), tuple(c2))
        if best is None or cand < best:
            best = cand
    return best


def closure(seed: Seed, max_seeds: int) -> ClosureResult:
    """Breadth-first mutation closure up to mutable-vertex permutation.

    Raises when more than max_seeds distinct seeds appear (the mutation class
    is then suspected to be infinite)."""
    if max_seeds < 1:
        raise ValueError("max_seeds must be >= 1")
    seeds = [seed]
    seen = {_seed_key(seed): 0}
    edges = set()
    queue = deque([0])
    while queue:
        idx = queue.popleft()
        current = seeds[idx]
        for k in current.quiver.mutable_vertices:
            child = mutate_seed(current, k)
            key = _seed_key(child)
            if key in seen:
                other = seen[key]
                if other != idx:
                    edges.add((min(idx, other), max(idx, other)))
                continue
            if len(seeds) >= max_seeds:
                raise ClosureBoundError(
                    f"closure exceeded {max_seeds} seeds; stopping"
                )
            seen[key] = len(seeds)
            edges.add((idx, len(seeds)))
            queue.append(len(seeds))
            seeds.append(child)
    by_str = {}
    for s in seeds:
        for k in s.quiver.mutable_vertices:
            entry = s.cluster[k - 1]
            by_str.setdefault(str(entry), entry)
    variables = tuple(by_str[name] for name in sorted(by_str))
    return ClosureResult(tuple(seeds), variables, tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# membership in the upper bound


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    failing: tuple  # names of the Laurent rings that rejected the element
    rings: tuple  # all ring names that were checked


def _laurent_ok(f: RationalFunction, frozen_ids, flavor: AlgebraFlavor) -> bool:
    lau = f.is_laurent()
    if lau is None:
        return False
    if flavor is AlgebraFlavor.INVERTIBLE:
        return True
    mins = lau.min_exponents()
    return all(mins[i - 1] >= 0 for i in frozen_ids)


def starfish_membership(
    q: IceQuiver, f: RationalFunction, flavor: AlgebraFlavor = AlgebraFlavor.INVERTIBLE
) -> MembershipVerdict:
    """Test membership in the upper bound of the seed pattern of q.

    Requires a full-rank exchange matrix; under that hypothesis the upper
    bound equals the intersection of the initial Laurent ring with the
    Laurent rings of the one-step mutated seeds.  The element is expanded in
    each of those clusters by substituting the exchange relation, and must be
    Laurent every time; the non-invertible flavor additionally forbids
    negative exponents on frozen variables.
    """
    n = q.n
    if f.nvars != n:
        raise ValueError("expression variable count differs from vertex count")
    mut = q.mutable_vertices
    if exchange_rank(q) < len(mut):
        raise StarfishRankError(
            "starfish hypothesis violated: exchange matrix is rank-deficient"
        )
    base = variables(n)
    rings = ["L(t0)"] + [f"L(mu_{k}(t0))" for k in mut]
    failing = []
    if not _laurent_ok(f, q.frozen, flavor):
        failing.append("L(t0)")
    for k in mut:
        m1, m2 = _exchange_monomials(q, k, base)
        assignment = {i: base[i] for i in range(n)}
        # slot k now carries the adjacent cluster's new variable
        assignment[k - 1] = (m1 + m2) / base[k - 1]
        g = f.substitute(assignment)
        if not _laurent_ok(g, q.frozen, flavor):
            failing.append(f"L(mu_{k}(t0))")
    return MembershipVerdict(not failing, tuple(failing), tuple(rings))


def localization_certificate(
    q: IceQuiver,
    k: int,
    f: RationalFunction,
    d_max: int,
    flavor: AlgebraFlavor = AlgebraFlavor.INVERTIBLE,
):
    """Smallest d with f * x_k^d in the upper bound of q, or None.

    Precondition: f lies in the upper bound of freeze(q, k), i.e. of the
    pattern where x_k is a coefficient.  Checked; failure raises with the
    failing ring names attached.
    """
    if d_max < 0:
        raise ValueError("d_max must be >= 0")
    q.check_vertex(k)
    frozen_version = freeze(q, k)
    pre = starfish_membership(frozen_version, f, flavor)
    if not pre.member:
        raise MembershipPreconditionError(
            "element is not in the upper bound of the frozen-at-k pattern; "
            f"failing rings: {', '.join(pre.failing)}",
            failing=pre.failing,
        )
    xk = RationalFunction.variable(q.n, k - 1)
    for d in range(d_max + 1):
        if starfish_membership(q, f * xk ** d, flavor).member:
            return d
    return None


# ---------------------------------------------------------------------------
# specialization of a frozen variable to 1


def specialize_frozen(seed: Seed, f: int) -> Seed:
    """Set the frozen variable at f to 1 and delete the vertex.

    Remaining variables are renumbered to stay contiguous, matching the
    vertex renumbering of delete_frozen."""
    q = seed.quiver
    q.check_vertex(f)
    if f not in q.frozen:
        raise NotFrozenError(f"vertex {f} is not frozen; cannot specialize")
    n = q.n
    assignment = {}
    for j in range(1, n + 1):
        if j == f:
            assignment[j - 1] = RationalFunction.one(n - 1)
        elif j < f:
            assignment[j - 1] = RationalFunction.variable(n - 1, j - 1)
        else:
            assignment[j - 1] = RationalFunction.variable(n - 1, j - 2)
    cluster = tuple(
        seed.cluster[j - 1].substitute(assignment)
        for j in range(1, n + 1)
        if j != f
    )
    return Seed(delete_frozen(q, f), cluster, seed.history)


# ---------------------------------------------------------------------------
# seed files


def seed_to_obj(seed: Seed) -> dict:
    return {
        "type": "seed",
        "quiver": quiver_to_obj(seed.quiver),
        "cluster": [str(c) for c in seed.cluster],
        "history": list(seed.history),
    }


def seed_from_obj(obj) -> Seed:
    if not isinstance(obj, dict) or obj.get("type") != "seed":
        raise ValueError('seed object must have "type": "seed"')
    quiver = quiver_from_obj(obj.get("quiver"))
    raw = obj.get("cluster")
    if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
        raise ValueError("seed cluster must be a list of expression strings")
    cluster = tuple(parse_expression(text, nvars=quiver.n) for text in raw)
    history = obj.get("history", [])
    if not isinstance(history, list) or not all(isinstance(h, int) for h in history):
        raise ValueError("seed history must be an integer list")
    return Seed(quiver, cluster, tuple(history))
