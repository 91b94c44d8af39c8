"""Simply laced Dynkin diagrams and Weyl groups acting on the root lattice.

Elements are integer matrices in the simple-root basis.  A word
(i1, ..., il) composes left to right with s_{i1} outermost, so applying the
element to a vector computes s_{i1}(s_{i2}(...s_{il}(v)))."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import EmptyRichardsonError, NonReducedWordError, SizeGuardError

__all__ = [
    "DynkinDiagram",
    "WeylGroupElement",
    "weyl_element",
    "simple_reflection",
    "identity_element",
    "is_reduced",
    "longest_element",
    "bruhat_leq",
    "weak_right_leq",
    "richardson_dim",
    "enumerate_reduced_words",
    "parse_word",
    "format_word",
    "type_a_permutation",
    "apply_permutation",
]


@lru_cache(maxsize=None)
def _edges(letter: str, rank: int) -> tuple:
    if letter == "A":
        return tuple((i, i + 1) for i in range(1, rank))
    if letter == "D":
        chain = [(i, i + 1) for i in range(1, rank - 1)]
        chain.append((rank - 2, rank))
        return tuple(sorted(chain))
    # E6/E7/E8, Bourbaki numbering: chain 1-3-4-...-rank with 2 attached to 4
    chain = [(1, 3)] + [(i, i + 1) for i in range(3, rank)]
    chain.append((2, 4))
    return tuple(sorted(chain))


@dataclass(frozen=True)
class DynkinDiagram:
    """A simply laced Dynkin diagram of type A, D or E."""

    letter: str
    rank: int

    def __post_init__(self):
        if self.letter == "A":
            if self.rank < 1:
                raise ValueError("type A needs rank >= 1")
        elif self.letter == "D":
            if self.rank < 4:
                raise ValueError("type D needs rank >= 4")
        elif self.letter == "E":
            if self.rank not in (6, 7, 8):
                raise ValueError("type E needs rank 6, 7 or 8")
        else:
            raise ValueError(f"unknown type letter {self.letter!r}")

    @classmethod
    def from_label(cls, label: str) -> "DynkinDiagram":
        label = label.strip()
        if len(label) < 2 or not label[1:].isdigit():
            raise ValueError(f"bad Dynkin label {label!r}; expected e.g. A4")
        return cls(label[0].upper(), int(label[1:]))

    @property
    def label(self) -> str:
        return f"{self.letter}{self.rank}"

    @property
    def vertices(self) -> tuple:
        return tuple(range(1, self.rank + 1))

    @property
    def edges(self) -> tuple:
        return _edges(self.letter, self.rank)

    def adjacent(self, i: int, j: int) -> bool:
        a, b = min(i, j), max(i, j)
        return (a, b) in self.edges

    def neighbors(self, i: int) -> tuple:
        return tuple(sorted(b if a == i else a for a, b in self.edges if i in (a, b)))

    def cartan(self, i: int, j: int) -> int:
        if i == j:
            return 2
        return -1 if self.adjacent(i, j) else 0

    def check_letter(self, i: int):
        if not 1 <= i <= self.rank:
            raise ValueError(f"letter {i} out of range for {self.label}")


@lru_cache(maxsize=None)
def _positive_roots(diagram: DynkinDiagram) -> tuple:
    """All positive roots as coordinate tuples in the simple-root basis."""
    n = diagram.rank
    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simples)
    frontier = list(simples)
    while frontier:
        new = []
        for root in frontier:
            for i in range(1, n + 1):
                img = _reflect_simple(diagram, i, root)
                if all(c >= 0 for c in img) and img not in roots:
                    roots.add(img)
                    new.append(img)
        frontier = new
    return tuple(sorted(roots))


def _reflect_simple(diagram, i, vec):
    # s_i(v) = v - <alpha_i^vee, v> alpha_i ; pairing uses the Cartan matrix
    n = diagram.rank
    pairing = sum(diagram.cartan(i, j + 1) * vec[j] for j in range(n))
    return tuple(
        vec[k] - pairing if k == i - 1 else vec[k] for k in range(n)
    )


@lru_cache(maxsize=None)
def _reflection_matrix(diagram: DynkinDiagram, i: int) -> tuple:
    n = diagram.rank
    cols = []
    for j in range(1, n + 1):
        basis = tuple(1 if k == j - 1 else 0 for k in range(n))
        cols.append(_reflect_simple(diagram, i, basis))
    # store as rows
    return tuple(tuple(cols[j][k] for j in range(n)) for k in range(n))


def _mat_mul(a, b):
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _mat_vec(m, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def _identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _length_of(diagram, matrix) -> int:
    count = 0
    for root in _positive_roots(diagram):
        img = _mat_vec(matrix, root)
        if all(c <= 0 for c in img):
            count += 1
    return count


@dataclass(frozen=True)
class WeylGroupElement:
    """Group element given by its action on the root lattice, with cached length."""

    diagram: DynkinDiagram
    matrix: tuple
    length: int

    @classmethod
    def _make(cls, diagram, matrix):
        return cls(diagram, matrix, _length_of(diagram, matrix))

    def __mul__(self, other: "WeylGroupElement") -> "WeylGroupElement":
        if self.diagram != other.diagram:
            raise ValueError("elements of different Weyl groups")
        return WeylGroupElement._make(self.diagram, _mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "WeylGroupElement":
        n = self.diagram.rank
        aug = [
            [Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
            for i, row in enumerate(self.matrix)
        ]
        for col in range(n):
            pivot = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[pivot] = aug[pivot], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    factor = aug[r][col]
                    aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
        inv = tuple(
            tuple(int(aug[i][n + j]) for j in range(n)) for i in range(n)
        )
        return WeylGroupElement(self.diagram, inv, self.length)

    def apply(self, vec) -> tuple:
        return _mat_vec(self.matrix, vec)

    def apply_simple(self, i: int) -> tuple:
        """Image of the simple root alpha_i."""
        return tuple(row[i - 1] for row in self.matrix)

    def is_identity(self) -> bool:
        return self.length == 0

    def is_right_descent(self, i: int) -> bool:
        """True when multiplying by s_i on the right shortens the element."""
        img = self.apply_simple(i)
        return any(c < 0 for c in img)

    def right_descents(self) -> tuple:
        return tuple(i for i in self.diagram.vertices if self.is_right_descent(i))

    def times_simple(self, i: int) -> "WeylGroupElement":
        m = _mat_mul(self.matrix, _reflection_matrix(self.diagram, i))
        delta = -1 if self.is_right_descent(i) else 1
        return WeylGroupElement(self.diagram, m, self.length + delta)


def identity_element(diagram: DynkinDiagram) -> WeylGroupElement:
    return WeylGroupElement(diagram, _identity_matrix(diagram.rank), 0)


def simple_reflection(diagram: DynkinDiagram, i: int) -> WeylGroupElement:
    diagram.check_letter(i)
    return WeylGroupElement(diagram, _reflection_matrix(diagram, i), 1)


def weyl_element(diagram: DynkinDiagram, word) -> WeylGroupElement:
    """Evaluate a word to a group element (left-to-right composition)."""
    m = _identity_matrix(diagram.rank)
    for i in word:
        diagram.check_letter(i)
        m = _mat_mul(m, _reflection_matrix(diagram, i))
    return WeylGroupElement._make(diagram, m)


def is_reduced(diagram: DynkinDiagram, word) -> bool:
    return weyl_element(diagram, word).length == len(word)


def longest_element(diagram: DynkinDiagram) -> WeylGroupElement:
    if diagram.rank > 8:
        raise SizeGuardError("longest element supported for rank <= 8 only")
    w = identity_element(diagram)
    while True:
        for i in diagram.vertices:
            if not w.is_right_descent(i):
                w = w.times_simple(i)
                break
        else:
            return w


def _check_same_group(v, w):
    if v.diagram != w.diagram:
        raise ValueError("elements of different Weyl groups")


@lru_cache(maxsize=None)
def _bruhat_leq_cached(v: WeylGroupElement, w: WeylGroupElement) -> bool:
    if v.length > w.length:
        return False
    if v.length == 0 or v == w:
        return True
    s = next(i for i in w.diagram.vertices if w.is_right_descent(i))
    ws = w.times_simple(s)
    if v.is_right_descent(s):
        return _bruhat_leq_cached(v.times_simple(s), ws)
    return _bruhat_leq_cached(v, ws)


def bruhat_leq(v: WeylGroupElement, w: WeylGroupElement) -> bool:
    """Bruhat order comparison via the lifting property."""
    _check_same_group(v, w)
    return _bruhat_leq_cached(v, w)


def weak_right_leq(v: WeylGroupElement, w: WeylGroupElement) -> bool:
    """Weak right order: lengths add along v^{-1} w."""
    _check_same_group(v, w)
    return v.length + (v.inverse() * w).length == w.length


def richardson_dim(v: WeylGroupElement, w: WeylGroupElement) -> int:
    """Dimension of the open stratum attached to v <= w; raises when empty."""
    _check_same_group(v, w)
    if not bruhat_leq(v, w):
        raise EmptyRichardsonError(
            "stratum is empty: v is not below w in Bruhat order"
        )
    return w.length - v.length


def enumerate_reduced_words(diagram: DynkinDiagram, w: WeylGroupElement) -> set:
    """All reduced words for w; guarded to length <= 12."""
    if w.diagram != diagram:
        raise ValueError("element does not belong to the given diagram")
    if w.length > 12:
        raise SizeGuardError("reduced-word enumeration guarded to length <= 12")
    memo: dict = {}

    def rec(u: WeylGroupElement) -> frozenset:
        if u.length == 0:
            return frozenset({()})
        cached = memo.get(u.matrix)
        if cached is not None:
            return cached
        words = set()
        for i in u.diagram.vertices:
            if u.is_right_descent(i):
                for prefix in rec(u.times_simple(i)):
                    words.add(prefix + (i,))
        result = frozenset(words)
        memo[u.matrix] = result
        return result

    return set(rec(w))


def parse_word(text: str) -> tuple:
    """Parse a comma-separated word; the empty string is the empty word."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad word {text!r}; expected comma-separated integers") from exc


def format_word(word) -> str:
    return ",".join(str(i) for i in word)


def type_a_permutation(w: WeylGroupElement) -> tuple:
    """One-line permutation of {1..n+1} realizing w in type A.

    The convention matches word evaluation: s_i acts as the transposition of
    i and i+1, composed with the first letter outermost.
    """
    if w.diagram.letter != "A":
        raise ValueError("permutation realization requires type A")
    n = w.diagram.rank
    ends = []
    for i in range(1, n + 1):
        img = w.apply_simple(i)
        # convert root coordinates to e-basis: e_k coefficient is c_k - c_{k-1}
        coords = list(img) + [0]
        plus = minus = None
        prev = 0
        for k in range(n + 1):
            d = coords[k] - prev
            prev = coords[k]
            if d == 1:
                plus = k + 1
            elif d == -1:
                minus = k + 1
        if plus is None or minus is None:
            raise RuntimeError("root image is not of the form e_a - e_b")
        ends.append((plus, minus))
    perm = [ends[0][0]]
    for i in range(n):
        plus, minus = ends[i]
        if perm[-1] != plus:
            raise RuntimeError("inconsistent chain in permutation recovery")
        perm.append(minus)
        if i + 1 < n and ends[i + 1][0] != minus:
            raise RuntimeError("inconsistent chain in permutation recovery")
    return tuple(perm)


def apply_permutation(perm: tuple, subset) -> frozenset:
    """Image of a set of indices under a one-line permutation."""
    return frozenset(perm[i - 1] for i in subset)
