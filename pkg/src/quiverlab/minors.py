"""Type A verification layer: flag minors on unitriangular matrices.

Positions of a reduced word receive minor specifications; the initial
exchange relations of the word's quiver must then hold identically as
polynomial identities in the matrix entries.  The symbolic route (exact
division of M1 + M2 by the minor at the mutated vertex) is decisive for the
row/column convention; random exact evaluations re-check it numerically.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .coxeter import (
    DynkinDiagram,
    WeylGroupElement,
    apply_permutation,
    identity_element,
    type_a_permutation,
)
from .errors import ConventionMismatchError
from .exact import Poly
from .quivers import gls_quiver

__all__ = [
    "ExactMatrix",
    "random_unitriangular",
    "MinorSpec",
    "flag_minor",
    "generalized_minor_sets",
    "cn_seed_realization",
    "VerificationEntry",
    "VerificationReport",
    "verify_exchange_identities",
    "richardson_denominator",
]


@dataclass(frozen=True)
class ExactMatrix:
    """Square matrix over exact rationals."""

    entries: tuple

    def __post_init__(self):
        n = len(self.entries)
        rows = []
        for row in self.entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
            rows.append(tuple(Fraction(x) for x in row))
        object.__setattr__(self, "entries", tuple(rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(n))
            for i in range(n)
        ))

    def is_unitriangular(self) -> bool:
        return all(
            self.entries[i][j] == (1 if i == j else 0)
            for i in range(self.size)
            for j in range(i + 1)
        )

    def submatrix(self, rows, cols) -> "ExactMatrix":
        rs = sorted(rows)
        cs = sorted(cols)
        for idx in rs + cs:
            if not 1 <= idx <= self.size:
                raise ValueError(f"index {idx} out of range 1..{self.size}")
        return ExactMatrix(tuple(
            tuple(self.entries[r - 1][c - 1] for c in cs) for r in rs
        ))

    def det(self) -> Fraction:
        n = self.size
        rows = [list(r) for r in self.entries]
        sign = 1
        result = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                rows[col], rows[pivot] = rows[pivot], rows[col]
                sign = -sign
            pv = rows[col][col]
            result *= pv
            for r in range(col + 1, n):
                if rows[r][col]:
                    factor = rows[r][col] / pv
                    rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
        return sign * result


def random_unitriangular(n: int, seed: int) -> ExactMatrix:
    """Seeded upper unitriangular matrix with small rational entries."""
    if n < 1:
        raise ValueError("size must be >= 1")
    rng = random.Random(seed)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j < i:
                row.append(Fraction(0))
            elif j == i:
                row.append(Fraction(1))
            else:
                row.append(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        rows.append(tuple(row))
    return ExactMatrix(tuple(rows))


@dataclass(frozen=True)
class MinorSpec:
    """Row and column index sets of equal positive size."""

    rows: frozenset
    cols: frozenset

    def __post_init__(self):
        object.__setattr__(self, "rows", frozenset(self.rows))
        object.__setattr__(self, "cols", frozenset(self.cols))
        if not self.rows or len(self.rows) != len(self.cols):
            raise ValueError("row and column sets must be nonempty and equal-sized")

    def describe(self) -> str:
        return (
            "D(rows={" + ",".join(map(str, sorted(self.rows)))
            + "}, cols={" + ",".join(map(str, sorted(self.cols))) + "})"
        )


def flag_minor(g: ExactMatrix, spec: MinorSpec) -> Fraction:
    return g.submatrix(spec.rows, spec.cols).det()


def _initial_segment(i: int) -> frozenset:
    return frozenset(range(1, i + 1))


def generalized_minor_sets(
    u: WeylGroupElement, v: WeylGroupElement, i: int
) -> MinorSpec:
    """Minor spec with rows u({1..i}) and cols v({1..i}) in the permutation
    realization; type A only."""
    if u.diagram != v.diagram:
        raise ValueError("elements of different Weyl groups")
    if u.diagram.letter != "A":
        raise ValueError("minor realization requires type A")
    if not 1 <= i <= u.diagram.rank:
        raise ValueError(f"fundamental index {i} out of range")
    seg = _initial_segment(i)
    rows = apply_permutation(type_a_permutation(u), seg)
    cols = apply_permutation(type_a_permutation(v), seg)
    return MinorSpec(rows, cols)


# ---------------------------------------------------------------------------
# symbolic layer: minors as polynomials in the strictly-upper entries


def _entry_index(n_mat: int):
    """Variable index for each strictly-upper entry of an n_mat x n_mat
    matrix, in row-major order."""
    index = {}
    for i in range(1, n_mat + 1):
        for j in range(i + 1, n_mat + 1):
            index[(i, j)] = len(index)
    return index


def _symbolic_unitriangular(n_mat: int):
    index = _entry_index(n_mat)
    nv = len(index)
    rows = []
    for i in range(1, n_mat + 1):
        row = []
        for j in range(1, n_mat + 1):
            if i == j:
                row.append(Poly.one(nv))
            elif i < j:
                row.append(Poly.variable(nv, index[(i, j)]))
            else:
                row.append(Poly.zero(nv))
        rows.append(row)
    return rows, nv


def _poly_det(mat) -> Poly:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    nv = mat[0][0].nvars
    total = Poly.zero(nv)
    for c in range(n):
        entry = mat[0][c]
        if entry.is_zero():
            continue
        rest = [row[:c] + row[c + 1:] for row in mat[1:]]
        term = entry * _poly_det(rest)
        total = total + term if c % 2 == 0 else total - term
    return total


def _symbolic_minor(symbolic, spec: MinorSpec) -> Poly:
    rs = sorted(spec.rows)
    cs = sorted(spec.cols)
    return _poly_det([[symbolic[r - 1][c - 1] for c in cs] for r in rs])


def _realization_specs(diagram: DynkinDiagram, word) -> tuple:
    if diagram.letter != "A":
        raise ValueError("minor realization requires type A")
    word = tuple(word)
    specs = []
    prefix = identity_element(diagram)
    for k, letter in enumerate(word, start=1):
        prefix = prefix.times_simple(letter)
        seg = _initial_segment(letter)
        cols = apply_permutation(type_a_permutation(prefix), seg)
        specs.append(MinorSpec(seg, cols))
    return tuple(specs)


def _symbolic_exchange_data(diagram: DynkinDiagram, word):
    """Per mutable vertex: the symbolic minor, the two exchange monomials in
    minor form, and the exact quotient (M1 + M2) / minor, or None."""
    quiver = gls_quiver(diagram, word)
    specs = _realization_specs(diagram, word)
    symbolic, _ = _symbolic_unitriangular(diagram.rank + 1)
    minors = [_symbolic_minor(symbolic, spec) for spec in specs]
    data = {}
    for k in quiver.mutable_vertices:
        m1 = None
        m2 = None
        for i in range(quiver.n):
            e = quiver.b[i][k - 1]
            if e > 0:
                factor = minors[i] ** e
                m1 = factor if m1 is None else m1 * factor
            elif e < 0:
                factor = minors[i] ** (-e)
                m2 = factor if m2 is None else m2 * factor
        one = Poly.one(minors[0].nvars)
        m1 = one if m1 is None else m1
        m2 = one if m2 is None else m2
        if minors[k - 1].is_zero():
            quotient = None
        else:
            quotient = (m1 + m2).divexact(minors[k - 1])
        data[k] = (minors[k - 1], m1, m2, quotient)
    return quiver, specs, minors, data


def cn_seed_realization(diagram: DynkinDiagram, word) -> tuple:
    """Minor spec for every position of the word's quiver, self-validated.

    Position k with letter i receives rows {1..i} and columns given by the
    length-k prefix of the word applied to {1..i}.  The assignment is checked
    by dividing each initial exchange relation symbolically; a failure means
    the row/column convention does not match and the transposed assignment
    (columns {1..i}, rows prefix({1..i})) should be used instead.
    """
    quiver, specs, _, data = _symbolic_exchange_data(diagram, word)
    bad = [k for k, (_, _, _, quotient) in data.items() if quotient is None]
    if bad:
        raise ConventionMismatchError(
            f"exchange identities fail at vertices {bad} under the "
            "rows-are-initial-segments convention; transpose the assignment "
            "(swap row and column sets) for this setup"
        )
    return specs


@dataclass(frozen=True)
class VerificationEntry:
    vertex: int
    symbolic_ok: bool
    trials_run: int
    first_failure: tuple  # () when clean, else (trial_index, matrix rows...)

    @property
    def ok(self) -> bool:
        return self.symbolic_ok and not self.first_failure


@dataclass(frozen=True)
class VerificationReport:
    word: tuple
    trials: int
    entries: tuple

    @property
    def all_ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def to_obj(self) -> dict:
        return {
            "word": list(self.word),
            "trials": self.trials,
            "all_ok": self.all_ok,
            "vertices": [
                {
                    "vertex": e.vertex,
                    "symbolic_ok": e.symbolic_ok,
                    "trials_run": e.trials_run,
                    "status": "ok" if e.ok else "fail",
                    "first_failure": list(e.first_failure),
                }
                for e in self.entries
            ],
        }


def verify_exchange_identities(
    diagram: DynkinDiagram, word, trials: int, seed: int = 0, jobs: int = 1
) -> VerificationReport:
    """Check every initial exchange relation of the word's quiver.

    Symbolically: (M1 + M2) must be exactly divisible by the minor at the
    mutated vertex.  Numerically: at `trials` seeded random unitriangular
    matrices, the minor values (computed by determinant evaluation, not from
    the symbolic forms) must satisfy minor_k * quotient = M1 + M2 exactly.
    """
    if trials < 0:
        raise ValueError("trials must be >= 0")
    word = tuple(word)
    quiver, specs, _, data = _symbolic_exchange_data(diagram, word)
    n_mat = diagram.rank + 1
    index = _entry_index(n_mat)

    def run_trial(t):
        g = random_unitriangular(n_mat, seed + t)
        point = [Fraction(0)] * len(index)
        for (i, j), pos in index.items():
            point[pos] = g.entries[i - 1][j - 1]
        residuals = {}
        for k, (_, _, _, quotient) in data.items():
            if quotient is None:
                continue
            left = flag_minor(g, specs[k - 1]) * quotient.evaluate(point)
            col = [quiver.b[i][k - 1] for i in range(quiver.n)]
            prod1 = Fraction(1)
            prod2 = Fraction(1)
            for i, e in enumerate(col):
                if e > 0:
                    prod1 *= flag_minor(g, specs[i]) ** e
                elif e < 0:
                    prod2 *= flag_minor(g, specs[i]) ** (-e)
            right = prod1 + prod2
            residuals[k] = left - right
        return g, residuals

    if jobs > 1 and trials > 0:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_trial, range(trials)))
    else:
        outcomes = [run_trial(t) for t in range(trials)]

    entries = []
    for k in sorted(data):
        quotient = data[k][3]
        failure = ()
        run = 0
        if quotient is not None:
            for t, (g, residuals) in enumerate(outcomes):
                run = t + 1
                if residuals[k] != 0:
                    failure = (t,) + tuple(
                        " ".join(str(x) for x in row) for row in g.entries
                    )
                    break
        entries.append(
            VerificationEntry(k, quotient is not None, run, failure)
        )
    return VerificationReport(word, trials, tuple(entries))


def richardson_denominator(
    v: WeylGroupElement, w: WeylGroupElement, g: ExactMatrix
) -> Fraction:
    """Product over fundamental indices of the minors with rows from the
    inverse of v and columns from the inverse of w."""
    if v.diagram != w.diagram:
        raise ValueError("elements of different Weyl groups")
    if v.diagram.letter != "A":
        raise ValueError("minor realization requires type A")
    if g.size != v.diagram.rank + 1:
        raise ValueError("matrix size must be rank + 1")
    vi = v.inverse()
    wi = w.inverse()
    result = Fraction(1)
    for i in range(1, v.diagram.rank + 1):
        result *= flag_minor(g, generalized_minor_sets(vi, wi, i))
    return result
