"""Exact sparse multivariate polynomials, Laurent polynomials and rational
functions over arbitrary-precision integers.

The monomial order is graded lexicographic everywhere: total degree first,
ties broken entrywise on the exponent tuple with x1 heaviest.  Rational
functions are kept reduced (numerator and denominator share no polynomial or
integer factor) with the denominator's leading coefficient positive, so equal
values always have equal representations.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from typing import Mapping, Optional, Sequence

from .errors import ExprSyntaxError  # noqa: F401  (re-exported for callers)

__all__ = [
    "Poly",
    "LaurentPolynomial",
    "RationalFunction",
    "poly_gcd",
    "arith",
    "parse_expression",
    "variables",
]


def _grlex_key(exp):
    return (sum(exp), exp)


class Poly:
    """Sparse polynomial in nvars variables with integer coefficients.

    terms maps exponent tuples (length nvars, entries >= 0) to nonzero
    integers.  Instances are treated as immutable; arithmetic returns new
    objects and never mutates operands.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError("exponent tuple has wrong length")
                if any(e < 0 for e in exp):
                    raise ValueError("polynomial exponents must be non-negative")
                if coeff:
                    clean[exp] = clean.get(exp, 0) + coeff
        self.nvars = nvars
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars, c):
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars):
        return cls.const(nvars, 1)

    @classmethod
    def variable(cls, nvars, index):
        """Variable x_{index+1}; index is 0-based."""
        if not 0 <= index < nvars:
            raise ValueError("variable index out of range")
        exp = tuple(1 if i == index else 0 for i in range(nvars))
        return cls._raw(nvars, {exp: 1})

    @classmethod
    def monomial(cls, nvars, exp, coeff=1):
        return cls(nvars, {tuple(exp): coeff})

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * self.nvars: 1}

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, 0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("nvars mismatch")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            elif exp in terms:
                del terms[exp]
        return Poly._raw(self.nvars, terms)

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly.zero(self.nvars)
        if len(a) > len(b):
            a, b = b, a
        # a is the shorter factor
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(exp, 0) + ca * cb
                if s:
                    out[exp] = s
                elif exp in out:
                    del out[exp]
        return Poly._raw(self.nvars, out)

    def scale(self, c: int):
        if c == 0:
            return Poly.zero(self.nvars)
        if c == 1:
            return self
        return Poly._raw(self.nvars, {e: k * c for e, k in self.terms.items()})

    def mul_monomial(self, exp, coeff=1):
        if coeff == 0:
            return Poly.zero(self.nvars)
        exp = tuple(exp)
        return Poly._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in self.terms.items()},
        )

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("Poly power must be non-negative")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, v):
        return max((e[v] for e in self.terms), default=0)

    def content(self):
        """Non-negative gcd of the integer coefficients (0 for the zero poly)."""
        g = 0
        for c in self.terms.values():
            g = _igcd(g, c)
            if g == 1:
                break
        return g

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        vals = [Fraction(p) for p in point]
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = Fraction(c)
            for v, e in zip(vals, exp):
                if e:
                    term *= v**e
            total += term
        return total

    def divexact(self, divisor: "Poly") -> Optional["Poly"]:
        """Exact quotient self/divisor, or None when it does not divide."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return Poly.zero(self.nvars)
        import heapq

        def heap_key(exp):
            return (-sum(exp), tuple(-x for x in exp), exp)

        dexp, dcoeff = divisor.leading()
        rem = dict(self.terms)
        heap = [heap_key(e) for e in rem]
        heapq.heapify(heap)
        out = {}
        while heap:
            exp = heapq.heappop(heap)[2]
            coeff = rem.get(exp)
            if not coeff:
                continue  # stale heap entry
            qexp = tuple(a - b for a, b in zip(exp, dexp))
            if any(e < 0 for e in qexp) or coeff % dcoeff:
                return None
            qc = coeff // dcoeff
            out[qexp] = qc
            for de, dc in divisor.terms.items():
                e = tuple(a + b for a, b in zip(qexp, de))
                old = rem.get(e, 0)
                s = old - qc * dc
                if s:
                    if old == 0:
                        heapq.heappush(heap, heap_key(e))
                    rem[e] = s
                else:
                    rem.pop(e, None)
        return Poly._raw(self.nvars, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        return _format_terms(self.sorted_terms())

    def __repr__(self):
        return f"Poly({self.nvars}, {self})"


def _format_monomial(exp):
    parts = []
    for i, e in enumerate(exp):
        if e == 0:
            continue
        if e == 1:
            parts.append(f"x{i + 1}")
        else:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def _format_terms(sorted_terms):
    if not sorted_terms:
        return "0"
    pieces = []
    for exp, coeff in sorted_terms:
        mono = _format_monomial(exp)
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if coeff > 0 else f" - {body}")
    return "".join(pieces)


def _sign_primitive(p: Poly) -> Poly:
    """Divide out the integer content and make the leading coefficient positive."""
    if p.is_zero():
        return p
    c = p.content()
    _, lead = p.leading()
    if lead < 0:
        c = -c
    if c == 1:
        return p
    return Poly._raw(p.nvars, {e: k // c for e, k in p.terms.items()})


def _coeffs_in(p: Poly, v: int) -> dict:
    """Map v-degree -> coefficient Poly (with the v slot zeroed)."""
    out: dict = {}
    for exp, c in p.terms.items():
        d = exp[v]
        rest = exp[:v] + (0,) + exp[v + 1 :]
        bucket = out.setdefault(d, {})
        bucket[rest] = bucket.get(rest, 0) + c
    return {
        d: Poly._raw(p.nvars, {e: c for e, c in bucket.items() if c})
        for d, bucket in out.items()
    }


def _cont_pp(p: Poly, v: int):
    """Content and primitive part of p viewed in the main variable v."""
    coeffs = _coeffs_in(p, v)
    cont = Poly.zero(p.nvars)
    for c in coeffs.values():
        cont = poly_gcd(cont, c)
        if cont.is_one():
            return cont, p
    pp = p.divexact(cont)
    assert pp is not None
    return cont, pp


def _cont_in(p: Poly, v: int) -> Poly:
    """Content of p viewed in the main variable v (gcd of v-coefficients)."""
    cont = Poly.zero(p.nvars)
    for c in _coeffs_in(p, v).values():
        cont = poly_gcd(cont, c)
        if cont.is_one():
            break
    return cont


def _lead_in(p: Poly, v: int):
    """(degree, leading coefficient Poly) of p in the variable v."""
    d = p.degree_in(v)
    bucket = {}
    for exp, c in p.terms.items():
        if exp[v] == d:
            bucket[exp[:v] + (0,) + exp[v + 1 :]] = c
    return d, Poly._raw(p.nvars, bucket)


def _eval_univariate(p: Poly, v: int, vals: dict) -> list:
    """Dense coefficient list of p in v with other variables set to integers."""
    coeffs = [0] * (p.degree_in(v) + 1)
    for exp, c in p.terms.items():
        val = c
        for u, e in enumerate(exp):
            if u != v and e:
                val *= vals[u] ** e
        coeffs[exp[v]] += val
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _uni_mod(a: list, b: list) -> list:
    a = a[:]
    while a and len(a) >= len(b):
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] -= q * bc
        while a and a[-1] == 0:
            a.pop()
    return a


def _uni_gcd_degree(fa: list, fb: list) -> int:
    a = [Fraction(c) for c in fa]
    b = [Fraction(c) for c in fb]
    while b:
        a, b = b, _uni_mod(a, b)
    return len(a) - 1


def _gcd_degree_bound(a: Poly, b: Poly, v: int) -> int:
    """A proven upper bound for deg_v(gcd(a, b)).

    Specializing the other variables at a point where a's leading
    v-coefficient stays nonzero can only raise the gcd degree, so the image
    gcd degree bounds the true one.  Returns min(deg) when no good point is
    found (always sound).
    """
    import random as _random

    da, db = a.degree_in(v), b.degree_in(v)
    others = [
        u
        for u in range(a.nvars)
        if u != v and (a.degree_in(u) or b.degree_in(u))
    ]
    if not others:
        return _uni_gcd_degree(
            _eval_univariate(a, v, {}), _eval_univariate(b, v, {})
        )
    for attempt in range(5):
        rng = _random.Random(10007 * attempt + 131 * v + 7 * a.nvars)
        vals = {
            u: rng.randint(1, 4 + 2 * attempt) * rng.choice((1, -1)) for u in others
        }
        fa = _eval_univariate(a, v, vals)
        fb = _eval_univariate(b, v, vals)
        if len(fa) - 1 != da or len(fb) - 1 != db:
            continue
        return _uni_gcd_degree(fa, fb)
    return min(da, db)


def _prem_strict(a: Poly, b: Poly, v: int) -> Poly:
    """Textbook pseudo-remainder: lc_v(b)^(deg a - deg b + 1) * a mod b."""
    da, db = a.degree_in(v), b.degree_in(v)
    _, lb = _lead_in(b, v)
    r = a
    steps = 0
    while not r.is_zero():
        dr = r.degree_in(v)
        if dr < db:
            break
        _, lr = _lead_in(r, v)
        shift = tuple(dr - db if i == v else 0 for i in range(a.nvars))
        r = lb * r - lr.mul_monomial(shift) * b
        steps += 1
    deficit = da - db + 1 - steps
    if deficit > 0 and not r.is_zero():
        r = r * lb**deficit
    return r


def _gcd_subresultant(pa: Poly, pb: Poly, v: int) -> Poly:
    """Last nonzero element of the subresultant PRS of pa, pb in v.

    Inputs are primitive with respect to v; the result's primitive part with
    respect to v is their gcd.
    """
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    g = Poly.one(pa.nvars)
    h = Poly.one(pa.nvars)
    a_cur, b_cur = pa, pb
    while True:
        delta = a_cur.degree_in(v) - b_cur.degree_in(v)
        r = _prem_strict(a_cur, b_cur, v)
        if r.is_zero():
            return b_cur
        if r.degree_in(v) == 0:
            return r
        beta = g * h**delta
        b_next = r.divexact(beta)
        if b_next is None:
            raise RuntimeError("subresultant division failed: implementation bug")
        a_cur, b_cur = b_cur, b_next
        _, g = _lead_in(a_cur, v)
        if delta == 1:
            h = g
        elif delta > 1:
            h_new = (g**delta).divexact(h ** (delta - 1))
            if h_new is None:
                raise RuntimeError("subresultant update failed: implementation bug")
            h = h_new


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Primitive, sign-normalized gcd of the primitive parts of p and q.

    Integer contents are intentionally not included; fraction reduction
    handles them separately.  gcd(0, q) is the normalized q.
    """
    if p.nvars != q.nvars:
        raise ValueError("nvars mismatch")
    if p.is_zero() and q.is_zero():
        return Poly.zero(p.nvars)
    if p.is_zero():
        return _sign_primitive(q)
    if q.is_zero():
        return _sign_primitive(p)
    a = _sign_primitive(p)
    b = _sign_primitive(q)
    if a == b:
        return a
    if a.is_constant() or b.is_constant():
        return Poly.one(p.nvars)
    if len(a.terms) == 1 or len(b.terms) == 1:
        # one side is a monomial: gcd is the shared monomial factor
        exps = list(a.terms) + list(b.terms)
        shared = tuple(min(col) for col in zip(*exps))
        return Poly.monomial(p.nvars, shared)
    common = [
        v for v in range(p.nvars) if a.degree_in(v) > 0 and b.degree_in(v) > 0
    ]
    if not common:
        return Poly.one(p.nvars)
    bounds = {}
    for v in common:
        bound = _gcd_degree_bound(a, b, v)
        if bound == 0:
            # the gcd is free of v, so it lives in the v-contents
            return poly_gcd(_cont_in(a, v), _cont_in(b, v))
        bounds[v] = bound
    v = min(common, key=lambda u: (bounds[u], max(a.degree_in(u), b.degree_in(u)), u))
    ca, pa = _cont_pp(a, v)
    cb, pb = _cont_pp(b, v)
    cont = poly_gcd(ca, cb)
    raw = _gcd_subresultant(pa, pb, v)
    if raw.degree_in(v) == 0:
        gpp = Poly.one(p.nvars)
    else:
        gpp = _cont_pp(raw, v)[1]
    g = _sign_primitive(cont * gpp)
    if a.divexact(g) is None or b.divexact(g) is None:
        raise RuntimeError("gcd self-check failed: implementation bug")
    return g


def _over_monomial(num: Poly, den: Poly) -> "RationalFunction":
    """Canonical fraction for a single-term denominator, avoiding poly_gcd.

    Produces exactly what RationalFunction(num, den) would: shared monomial
    factor and integer content removed, denominator coefficient positive.
    """
    if len(den.terms) != 1:
        raise ValueError("denominator must be a monomial")
    if num.is_zero():
        return RationalFunction._raw(Poly.zero(num.nvars), Poly.one(num.nvars))
    ((dexp, dc),) = den.terms.items()
    mins = tuple(min(col) for col in zip(*num.terms))
    shift = tuple(min(d, m) for d, m in zip(dexp, mins))
    c = _igcd(num.content(), dc)
    if dc < 0:
        c = -c
    new_num = Poly._raw(
        num.nvars,
        {
            tuple(e - s for e, s in zip(exp, shift)): k // c
            for exp, k in num.terms.items()
        },
    )
    new_den = Poly._raw(
        num.nvars, {tuple(d - s for d, s in zip(dexp, shift)): dc // c}
    )
    return RationalFunction._raw(new_num, new_den)


class LaurentPolynomial:
    """Sparse Laurent polynomial: integer exponents of either sign."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None):
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError("exponent tuple has wrong length")
                if coeff:
                    clean[exp] = clean.get(exp, 0) + coeff
        self.nvars = nvars
        self.terms = {e: c for e, c in clean.items() if c}

    def is_zero(self):
        return not self.terms

    def term_count(self):
        return len(self.terms)

    def min_exponents(self):
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self.terms))

    def coefficients(self):
        return tuple(c for _, c in self.sorted_terms())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def to_rational(self) -> "RationalFunction":
        shift = tuple(-min(e, 0) for e in self.min_exponents())
        num = {}
        for exp, c in self.terms.items():
            num[tuple(a + b for a, b in zip(exp, shift))] = c
        return RationalFunction(
            Poly._raw(self.nvars, num), Poly.monomial(self.nvars, shift)
        )

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPolynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __str__(self):
        return _format_terms(self.sorted_terms())

    def __repr__(self):
        return f"LaurentPolynomial({self.nvars}, {self})"


class RationalFunction:
    """Reduced fraction of integer polynomials with a canonical representation.

    Invariants: gcd(num, den) is constant 1 (polynomial and integer content),
    the denominator's graded-lex leading coefficient is positive, and 0 is
    always 0/1.  Equality of values is therefore equality of representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.nvars)
        if num.nvars != den.nvars:
            raise ValueError("nvars mismatch")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = Poly.zero(num.nvars)
            self.den = Poly.one(num.nvars)
            return
        g = poly_gcd(num, den)
        if not g.is_one():
            num = num.divexact(g)
            den = den.divexact(g)
        c = _igcd(num.content(), den.content())
        _, dlead = den.leading()
        if dlead < 0:
            c = -c
        if c != 1:
            num = Poly._raw(num.nvars, {e: k // c for e, k in num.terms.items()})
            den = Poly._raw(den.nvars, {e: k // c for e, k in den.terms.items()})
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num, den):
        f = object.__new__(cls)
        f.num = num
        f.den = den
        return f

    @property
    def nvars(self):
        return self.num.nvars

    @classmethod
    def zero(cls, nvars):
        return cls._raw(Poly.zero(nvars), Poly.one(nvars))

    @classmethod
    def one(cls, nvars):
        return cls._raw(Poly.one(nvars), Poly.one(nvars))

    @classmethod
    def const(cls, nvars, c):
        return cls._raw(Poly.const(nvars, c), Poly.one(nvars))

    @classmethod
    def variable(cls, nvars, index):
        return cls._raw(Poly.variable(nvars, index), Poly.one(nvars))

    @classmethod
    def from_fraction(cls, nvars, q: Fraction):
        return cls(Poly.const(nvars, q.numerator), Poly.const(nvars, q.denominator))

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        self._check(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        self._check(other)
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __mul__(self, other):
        self._check(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        # Laurent fast path: when both operands are reduced fractions over
        # monomials and the divisor's numerator divides ours exactly, the
        # quotient polynomial is the whole answer up to monomial bookkeeping.
        # This sidesteps a general gcd whose arguments can dwarf the result.
        if (
            len(self.den.terms) == 1
            and len(other.den.terms) == 1
            and len(other.num.terms) > 1
        ):
            q = self.num.divexact(other.num)
            if q is not None:
                return _over_monomial(q * other.den, self.den)
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int):
        if k < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalFunction(self.den, self.num) ** (-k)
        result = RationalFunction.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _check(self, other):
        if not isinstance(other, RationalFunction):
            raise TypeError("expected RationalFunction")
        if self.nvars != other.nvars:
            raise ValueError("nvars mismatch")

    def evaluate(self, point: Sequence) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def variables_used(self):
        used = set()
        for poly in (self.num, self.den):
            for exp in poly.terms:
                for i, e in enumerate(exp):
                    if e:
                        used.add(i)
        return used

    def substitute(self, assignment: Mapping[int, "RationalFunction"]) -> "RationalFunction":
        """Substitute values for 0-based variable indices.

        Every variable occurring in self must be assigned.  The assigned
        values must all live in the same variable space, which becomes the
        space of the result.
        """
        used = self.variables_used()
        missing = used - set(assignment)
        if missing:
            raise ValueError(
                "unassigned variables: " + ", ".join(f"x{i + 1}" for i in sorted(missing))
            )
        if assignment:
            out_nvars = next(iter(assignment.values())).nvars
        else:
            out_nvars = self.nvars
        for val in assignment.values():
            if val.nvars != out_nvars:
                raise ValueError("assigned values live in different variable spaces")
        nn, en = _poly_subst(self.num, assignment, out_nvars)
        dn, ed = _poly_subst(self.den, assignment, out_nvars)
        if dn.is_zero():
            raise ZeroDivisionError("denominator vanishes under substitution")
        # cancel the structured common denominator powers before reducing
        num, den = nn, dn
        for i in set(en) | set(ed):
            diff = ed.get(i, 0) - en.get(i, 0)
            if diff > 0:
                num = num * assignment[i].den ** diff
            elif diff < 0:
                den = den * assignment[i].den ** (-diff)
        return RationalFunction(num, den)

    def is_laurent(self) -> Optional[LaurentPolynomial]:
        """The Laurent form, or None when the reduced denominator is not a
        coefficient-1 monomial."""
        if self.is_zero():
            return LaurentPolynomial(self.nvars, {})
        if len(self.den.terms) != 1:
            return None
        (dexp, dcoeff), = self.den.terms.items()
        if dcoeff != 1:
            return None
        terms = {
            tuple(a - b for a, b in zip(exp, dexp)): c
            for exp, c in self.num.terms.items()
        }
        return LaurentPolynomial(self.nvars, terms)

    def __str__(self):
        num_str = str(self.num)
        if self.den.is_one():
            return num_str
        return f"({num_str})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def _poly_subst(p: Poly, assignment, out_nvars):
    """Evaluate p at the assigned rational functions.

    Returns (numerator, exponents) where the value equals
    numerator / prod_i den_i^{exponents[i]}, i.e. the numerator over the
    common denominator, computed without per-term reduction.
    """
    if p.is_zero():
        return Poly.zero(out_nvars), {}
    maxexp = [0] * p.nvars
    for exp in p.terms:
        for i, e in enumerate(exp):
            if e > maxexp[i]:
                maxexp[i] = e
    num_pows = {}
    den_pows = {}
    for i, top in enumerate(maxexp):
        if top == 0:
            continue
        val = assignment[i]
        npows = [Poly.one(out_nvars)]
        dpows = [Poly.one(out_nvars)]
        for _ in range(top):
            npows.append(npows[-1] * val.num)
            dpows.append(dpows[-1] * val.den)
        num_pows[i] = npows
        den_pows[i] = dpows
    total = Poly.zero(out_nvars)
    for exp, c in p.terms.items():
        term = Poly.const(out_nvars, c)
        for i, e in enumerate(exp):
            top = maxexp[i]
            if top == 0:
                continue
            if e:
                term = term * num_pows[i][e]
            if top - e:
                term = term * den_pows[i][top - e]
        total = total + term
    return total, {i: top for i, top in enumerate(maxexp) if top}


def variables(nvars: int):
    """The tuple (x1, ..., xN) as rational functions."""
    return tuple(RationalFunction.variable(nvars, i) for i in range(nvars))


_ARITH_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def arith(f: RationalFunction, g: RationalFunction, op: str) -> RationalFunction:
    """Field operation dispatch; op is one of add, sub, mul, div."""
    if op not in _ARITH_OPS:
        raise ValueError(f"unknown operation {op!r}")
    return _ARITH_OPS[op](f, g)


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.index = 0

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "+-*/^()":
                self.tokens.append((ch, ch))
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", text[i:j]))
                i = j
                continue
            if ch == "x":
                j = i + 1
                while j < len(text) and text[j].isdigit():
                    j += 1
                if j == i + 1:
                    raise ExprSyntaxError(f"bad variable at position {i}: {text[i:]!r}")
                self.tokens.append(("var", text[i:j]))
                i = j
                continue
            raise ExprSyntaxError(f"unexpected character {ch!r} at position {i}")

    def peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("end", "")

    def next(self):
        tok = self.peek()
        self.index += 1
        return tok


class _Parser:
    """Recursive descent for the expression grammar.

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := ('-'|'+') unary | power
    power  := atom ('^' exponent)?
    atom   := INT | VAR | '(' expr ')'
    """

    def __init__(self, text, nvars):
        self.toks = _Tokenizer(text)
        self.nvars = nvars

    def parse(self) -> RationalFunction:
        value = self.expr()
        kind, tok = self.toks.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected trailing token {tok!r}")
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, _ = self.toks.peek()
            if kind == "+":
                self.toks.next()
                value = value + self.term()
            elif kind == "-":
                self.toks.next()
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, _ = self.toks.peek()
            if kind == "*":
                self.toks.next()
                value = value * self.unary()
            elif kind == "/":
                self.toks.next()
                divisor = self.unary()
                if divisor.is_zero():
                    raise ZeroDivisionError("division by zero in expression")
                value = value / divisor
            else:
                return value

    def unary(self):
        kind, _ = self.toks.peek()
        if kind == "-":
            self.toks.next()
            return -self.unary()
        if kind == "+":
            self.toks.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        kind, _ = self.toks.peek()
        if kind != "^":
            return base
        self.toks.next()
        expo = self.exponent()
        if expo < 0 and base.is_zero():
            raise ZeroDivisionError("negative power of zero in expression")
        return base**expo

    def exponent(self) -> int:
        kind, tok = self.toks.peek()
        if kind == "(":
            self.toks.next()
            value = self.exponent()
            kind, tok = self.toks.next()
            if kind != ")":
                raise ExprSyntaxError("expected ')' after exponent")
            return value
        sign = 1
        if kind == "-":
            self.toks.next()
            sign = -1
            kind, tok = self.toks.peek()
        if kind != "int":
            raise ExprSyntaxError("exponent must be an integer")
        self.toks.next()
        return sign * int(tok)

    def atom(self):
        kind, tok = self.toks.next()
        if kind == "int":
            return RationalFunction.const(self.nvars, int(tok))
        if kind == "var":
            index = int(tok[1:]) - 1
            if index < 0 or index >= self.nvars:
                raise ExprSyntaxError(
                    f"variable {tok} out of range for {self.nvars} variables"
                )
            return RationalFunction.variable(self.nvars, index)
        if kind == "(":
            value = self.expr()
            kind, tok = self.toks.next()
            if kind != ")":
                raise ExprSyntaxError("expected ')'")
            return value
        raise ExprSyntaxError(f"unexpected token {tok!r}")


def _max_var_index(text) -> int:
    best = 0
    i = 0
    while i < len(text):
        if text[i] == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j > i + 1:
                best = max(best, int(text[i + 1 : j]))
            i = j
        else:
            i += 1
    return best


def parse_expression(text: str, nvars: int | None = None) -> RationalFunction:
    """Parse an expression in variables x1..xN into a rational function.

    When nvars is omitted it is inferred as the largest variable index that
    appears (at least 1).
    """
    if nvars is None:
        nvars = max(_max_var_index(text), 1)
    return _Parser(text, nvars).parse()
