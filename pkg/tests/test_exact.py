"""Tests for exact polynomial / rational function arithmetic.

Oracle strategy: random expressions are checked against plain Fraction
arithmetic through the evaluation homomorphism (an independent route), gcds
are checked on constructed products, and canonical forms are checked by
round-tripping strings through the parser.
"""

import random
from fractions import Fraction

import pytest

from quiverlab.errors import ExprSyntaxError
from quiverlab.exact import (
    LaurentPolynomial,
    Poly,
    RationalFunction,
    arith,
    parse_expression,
    poly_gcd,
    variables,
)


def rf(text, nvars=None):
    return parse_expression(text, nvars)


def random_poly(rng, nvars, max_terms=4, max_exp=3, max_coeff=5):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exp = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        terms[exp] = rng.randint(-max_coeff, max_coeff)
    return Poly(nvars, terms)


def random_rf(rng, nvars):
    num = random_poly(rng, nvars)
    den = Poly.zero(nvars)
    while den.is_zero():
        den = random_poly(rng, nvars, max_terms=3, max_exp=2)
    return RationalFunction(num, den)


class TestPoly:
    def test_constructor_merges_and_drops_zeros(self):
        p = Poly(2, {(1, 0): 2, (0, 0): 0})
        q = Poly(2, {(1, 0): 1}) + Poly(2, {(1, 0): 1})
        assert p == q
        assert Poly(1, {(0,): 1}) + Poly(1, {(0,): -1}) == Poly.zero(1)

    def test_rejects_negative_exponents(self):
        with pytest.raises(ValueError):
            Poly(1, {(-1,): 1})

    def test_mul_matches_evaluation(self):
        rng = random.Random(11)
        for _ in range(60):
            nvars = rng.randint(1, 3)
            a = random_poly(rng, nvars)
            b = random_poly(rng, nvars)
            point = [Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(nvars)]
            assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
            assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)
            assert (a - b).evaluate(point) == a.evaluate(point) - b.evaluate(point)

    def test_pow(self):
        x = Poly.variable(2, 0)
        y = Poly.variable(2, 1)
        p = x + y
        assert p**3 == p * p * p
        assert p**0 == Poly.one(2)

    def test_leading_term_graded_lex(self):
        # x1*x2 beats x1 (degree), x1^2 beats x1*x2 (lex at equal degree)
        p = Poly(2, {(1, 1): 3, (1, 0): 9})
        assert p.leading() == ((1, 1), 3)
        q = Poly(2, {(2, 0): -1, (1, 1): 5})
        assert q.leading() == ((2, 0), -1)

    def test_divexact(self):
        rng = random.Random(5)
        for _ in range(40):
            nvars = rng.randint(1, 3)
            a = random_poly(rng, nvars)
            b = random_poly(rng, nvars)
            while b.is_zero():
                b = random_poly(rng, nvars)
            prod = a * b
            if a.is_zero():
                assert prod.divexact(b) == Poly.zero(nvars)
                continue
            assert prod.divexact(b) == a
        # a known non-divisible pair
        x = Poly.variable(1, 0)
        assert (x + Poly.one(1)).divexact(x) is None


class TestGcd:
    def test_examples(self):
        # gcd(x1^2, x1) = x1 and gcd(x1*x2 + x2, x1 + 1) = x1 + 1
        x1sq = Poly(2, {(2, 0): 1})
        x1 = Poly(2, {(1, 0): 1})
        assert poly_gcd(x1sq, x1) == x1
        p = Poly(2, {(1, 1): 1, (0, 1): 1})
        q = Poly(2, {(1, 0): 1, (0, 0): 1})
        assert poly_gcd(p, q) == q

    def test_gcd_of_zero(self):
        q = Poly(1, {(1,): -2, (0,): -2})
        z = Poly.zero(1)
        assert poly_gcd(z, q) == Poly(1, {(1,): 1, (0,): 1})
        assert poly_gcd(z, z) == z

    def test_constructed_products(self):
        rng = random.Random(23)
        for _ in range(40):
            nvars = rng.randint(1, 3)
            g = random_poly(rng, nvars, max_terms=2, max_exp=2, max_coeff=3)
            a = random_poly(rng, nvars, max_terms=2, max_exp=2, max_coeff=3)
            b = random_poly(rng, nvars, max_terms=2, max_exp=2, max_coeff=3)
            if g.is_zero() or a.is_zero() or b.is_zero():
                continue
            got = poly_gcd(g * a, g * b)
            # the gcd contains g (up to content) and divides both products
            assert got.divexact(poly_gcd(g, g)) is not None
            assert (g * a).divexact(got) is not None
            assert (g * b).divexact(got) is not None

    def test_stability_under_common_factor(self):
        # gcd(p*r, q*r) == normalized r * gcd(p, q)
        rng = random.Random(7)
        for _ in range(30):
            nvars = rng.randint(1, 2)
            p = random_poly(rng, nvars, max_terms=2)
            q = random_poly(rng, nvars, max_terms=2)
            r = random_poly(rng, nvars, max_terms=2)
            if p.is_zero() or q.is_zero() or r.is_zero():
                continue
            lhs = poly_gcd(p * r, q * r)
            base = poly_gcd(p, q)
            rhs = poly_gcd(base * r, base * r)  # normalized base*r
            assert lhs == rhs


class TestRationalFunction:
    def test_canonical_reduction(self):
        f = rf("(x1^2 - x2^2)/(x1 - x2)", 2)
        assert f == rf("x1 + x2", 2)
        assert str(f) == "x1 + x2"

    def test_sign_normalization(self):
        f = rf("x1/(-x2 + 1)", 2)
        # denominator leading coefficient must be positive
        assert str(f) == "(-x1)/(x2 - 1)"
        assert f == rf("(-x1)/(x2 - 1)", 2)

    def test_zero_is_zero_over_one(self):
        f = rf("(x1 - x1)/(x1 + 3)")
        assert f.is_zero()
        assert f == RationalFunction.zero(1)
        assert str(f) == "0"

    def test_zero_denominator_raises(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(Poly.one(1), Poly.zero(1))
        with pytest.raises(ZeroDivisionError):
            rf("1/(x1 - x1)")

    def test_field_ops_match_fraction_oracle(self):
        rng = random.Random(99)
        trials = 0
        while trials < 60:
            nvars = rng.randint(1, 3)
            f = random_rf(rng, nvars)
            g = random_rf(rng, nvars)
            point = [Fraction(rng.randint(1, 7), rng.randint(1, 5)) for _ in range(nvars)]
            try:
                fv, gv = f.evaluate(point), g.evaluate(point)
            except ZeroDivisionError:
                continue
            assert (f + g).evaluate(point) == fv + gv
            assert (f - g).evaluate(point) == fv - gv
            assert (f * g).evaluate(point) == fv * gv
            assert arith(f, g, "mul") == f * g
            if not g.is_zero() and gv != 0:
                assert (f / g).evaluate(point) == fv / gv
            trials += 1

    def test_equality_means_value_equality(self):
        rng = random.Random(3)
        for _ in range(30):
            f = random_rf(rng, 2)
            g = random_rf(rng, 2)
            h = random_rf(rng, 2)
            if h.is_zero():
                continue
            assert (f * h) / h == f
            assert (f + g) - g == f

    def test_pow_negative(self):
        f = rf("(1 + x1)/x2", 2)
        assert f**-2 == rf("x2^2/(1 + 2*x1 + x1^2)", 2)
        assert f**-1 * f == RationalFunction.one(2)

    def test_division_fast_path_matches_general_route(self):
        # fractions over monomials whose numerators divide exactly take a
        # gcd-free route; the result must be canonically identical to the
        # one the plain constructor produces
        rng = random.Random(17)
        checked = 0
        while checked < 40:
            nvars = rng.randint(1, 3)
            q = random_poly(rng, nvars)
            d = random_poly(rng, nvars)
            if q.is_zero() or d.is_zero() or len(d.terms) < 2:
                continue
            m1 = Poly.monomial(nvars, tuple(rng.randint(0, 2) for _ in range(nvars)),
                               rng.randint(1, 4))
            m2 = Poly.monomial(nvars, tuple(rng.randint(0, 2) for _ in range(nvars)),
                               rng.randint(1, 4))
            top = RationalFunction(q * d, m1)
            bottom = RationalFunction(d, m2)
            fast = top / bottom
            general = RationalFunction(top.num * bottom.den, top.den * bottom.num)
            assert fast.num == general.num
            assert fast.den == general.den
            checked += 1

    def test_division_fallback_when_not_divisible(self):
        f = rf("(1 + x1)/x2", 2)
        g = rf("(1 + x2)/x1", 2)
        h = f / g
        assert h == rf("(x1 + x1^2)/(x2 + x2^2)", 2)
        assert (h * g) == f


class TestLaurent:
    def test_laurent_form(self):
        f = rf("(x1^2 + x1*x2)/x1", 2)
        lp = f.is_laurent()
        assert lp == LaurentPolynomial(2, {(1, 0): 1, (0, 1): 1})

    def test_not_laurent(self):
        assert rf("1/(1 + x1)").is_laurent() is None

    def test_negative_exponents(self):
        f = rf("(1 + x1 + x2)/(x1*x2)", 2)
        lp = f.is_laurent()
        assert lp is not None
        assert lp.terms == {(-1, -1): 1, (0, -1): 1, (-1, 0): 1}
        assert lp.to_rational() == f

    def test_integer_content_blocks_laurent(self):
        # over the integers 1/2 is not a unit
        assert rf("(x1 + 2)/2").is_laurent() is None

    def test_str_round_trip(self):
        f = rf("(1 + x1 + x2)/(x1*x2)", 2)
        lp = f.is_laurent()
        assert parse_expression(str(lp), 2) == f


class TestSubstitute:
    def test_example(self):
        f = rf("x1", 2)
        target = rf("(1 + x2)/x3", 3)
        assert f.substitute({0: target}) == target

    def test_identity(self):
        f = rf("(x1 + x2^2)/(x1*x2)", 2)
        xs = variables(2)
        assert f.substitute({0: xs[0], 1: xs[1]}) == f

    def test_unassigned_variable_raises(self):
        f = rf("x1 + x2", 2)
        with pytest.raises(ValueError):
            f.substitute({0: RationalFunction.one(2)})

    def test_composition_matches_evaluation(self):
        rng = random.Random(41)
        done = 0
        while done < 25:
            f = random_rf(rng, 2)
            g0 = random_rf(rng, 3)
            g1 = random_rf(rng, 3)
            point = [Fraction(rng.randint(1, 6)) for _ in range(3)]
            try:
                composed = f.substitute({0: g0, 1: g1})
                expected = f.evaluate([g0.evaluate(point), g1.evaluate(point)])
                assert composed.evaluate(point) == expected
            except ZeroDivisionError:
                continue
            done += 1

    def test_denominator_vanishing_raises(self):
        f = rf("1/x1", 1)
        with pytest.raises(ZeroDivisionError):
            f.substitute({0: RationalFunction.zero(1)})


class TestParser:
    def test_precedence_and_parens(self):
        assert rf("1 + 2*x1^2", 1) == rf("1 + (2*(x1^2))", 1)
        assert rf("-x1^2", 1) == -rf("x1^2", 1)
        assert rf("2^3", 1) == RationalFunction.const(1, 8)

    def test_negative_exponent_forms(self):
        assert rf("x1^-1", 1) == rf("1/x1", 1)
        assert rf("x1^(-2)", 1) == rf("1/x1^2", 1)

    def test_division_chain(self):
        assert rf("x1/x2/x3", 3) == rf("x1/(x2*x3)", 3)

    def test_syntax_errors(self):
        for bad in ["x", "x1 +", "(x1", "x1^x2", "1 ** 2", "y1"]:
            with pytest.raises(ExprSyntaxError):
                parse_expression(bad, 3)

    def test_round_trip_random(self):
        rng = random.Random(17)
        for _ in range(40):
            f = random_rf(rng, 3)
            assert parse_expression(str(f), 3) == f

    def test_nvars_inference(self):
        f = parse_expression("x1 + x3")
        assert f.nvars == 3
