"""Seed mutation, closure, membership, localization, specialization."""

import random

import pytest

from quiverlab.errors import (
    ClosureBoundError,
    FrozenVertexError,
    MembershipPreconditionError,
    NotFrozenError,
    StarfishRankError,
)
from quiverlab.exact import parse_expression
from quiverlab.quivers import IceQuiver, freeze, quiver_from_arrows
from quiverlab.seeds import (
    AlgebraFlavor,
    closure,
    initial_seed,
    localization_certificate,
    mutate_seed,
    seed_from_obj,
    seed_to_obj,
    specialize_frozen,
    starfish_membership,
)

INV = AlgebraFlavor.INVERTIBLE
NONINV = AlgebraFlavor.NON_INVERTIBLE


def chain_quiver(n, frozen=()):
    return quiver_from_arrows(n, frozen, [(i, i + 1, 1) for i in range(1, n)])


def random_quiver(rng, nmax=6, mmax=2, max_mutable=4):
    while True:
        n = rng.randint(1, nmax)
        b = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.randint(-mmax, mmax)
                b[i][j] = v
                b[j][i] = -v
        frozen = frozenset(v for v in range(1, n + 1) if rng.random() < 0.35)
        if n - len(frozen) <= max_mutable and n > len(frozen):
            return IceQuiver(n, frozen, tuple(tuple(r) for r in b))


def expr(text, nvars):
    return parse_expression(text, nvars=nvars)


class TestSeedBasics:
    def test_initial_cluster(self):
        seed = initial_seed(chain_quiver(2))
        assert [str(c) for c in seed.cluster] == ["x1", "x2"]
        assert seed.history == ()

    def test_empty_quiver(self):
        seed = initial_seed(IceQuiver(0, frozenset(), ()))
        assert seed.cluster == ()

    def test_exchange_example(self):
        seed = mutate_seed(initial_seed(chain_quiver(2)), 1)
        assert seed.cluster[0] == expr("(1+x2)/x1", 2)
        assert seed.cluster[1] == expr("x2", 2)
        assert seed.history == (1,)

    def test_involution(self):
        rng = random.Random(20)
        for _ in range(30):
            q = random_quiver(rng)
            seed = initial_seed(q)
            k = rng.choice(q.mutable_vertices)
            back = mutate_seed(mutate_seed(seed, k), k)
            assert back.quiver == q
            assert back.cluster == seed.cluster

    def test_frozen_vertex_rejected(self):
        seed = initial_seed(chain_quiver(2, frozen={2}))
        with pytest.raises(FrozenVertexError):
            mutate_seed(seed, 2)

    def test_a2_orbit_variables(self):
        seed = initial_seed(chain_quiver(2))
        names = {str(c) for c in seed.cluster}
        k = 1
        for _ in range(5):
            seed = mutate_seed(seed, k)
            names.update(str(c) for c in seed.cluster)
            k = 3 - k
        expected = {
            str(expr(t, 2))
            for t in ("x1", "x2", "(1+x2)/x1", "(1+x1+x2)/(x1*x2)", "(1+x1)/x2")
        }
        assert names == expected


class TestClosure:
    def test_a2_pentagon(self):
        result = closure(initial_seed(chain_quiver(2)), 10)
        assert len(result.seeds) == 5
        assert len(result.variables) == 5
        assert len(result.edges) == 5
        degree = {}
        for a, b in result.edges:
            degree[a] = degree.get(a, 0) + 1
            degree[b] = degree.get(b, 0) + 1
        assert all(degree[i] == 2 for i in range(5))

    def test_a3_counts(self):
        result = closure(initial_seed(chain_quiver(3)), 40)
        assert len(result.seeds) == 14
        assert len(result.variables) == 9
        assert len(result.edges) == 21

    def test_single_frozen_vertex(self):
        q = IceQuiver(1, frozenset({1}), ((0,),))
        result = closure(initial_seed(q), 5)
        assert len(result.seeds) == 1
        assert result.variables == ()

    def test_bound_exceeded(self):
        with pytest.raises(ClosureBoundError):
            closure(initial_seed(chain_quiver(2)), 3)

    def test_brute_force_cross_check_a2(self):
        # independent enumerator: depth-first over raw mutation sequences,
        # identifying seeds by their unordered cluster string set
        q = chain_quiver(2)
        start = initial_seed(q)

        def cluster_set(seed):
            return frozenset(str(c) for c in seed.cluster)

        seen = {cluster_set(start)}
        variables = set(str(c) for c in start.cluster)
        stack = [(start, 0)]
        while stack:
            seed, depth = stack.pop()
            if depth >= 6:
                continue
            for k in seed.quiver.mutable_vertices:
                child = mutate_seed(seed, k)
                key = cluster_set(child)
                variables.update(key)
                if key not in seen:
                    seen.add(key)
                    stack.append((child, depth + 1))
        result = closure(start, 10)
        assert len(seen) == len(result.seeds) == 5
        assert variables == set(result.variable_strings())


class TestStarfish:
    def test_variable_is_member(self):
        q = chain_quiver(2)
        verdict = starfish_membership(q, expr("x1", 2), INV)
        assert verdict.member
        assert verdict.rings == ("L(t0)", "L(mu_1(t0))", "L(mu_2(t0))")

    def test_binomial_denominator_rejected(self):
        verdict = starfish_membership(chain_quiver(2), expr("1/(1+x1)", 2), INV)
        assert not verdict.member
        assert "L(t0)" in verdict.failing

    def test_cluster_variable_member(self):
        verdict = starfish_membership(chain_quiver(2), expr("(1+x2)/x1", 2), INV)
        assert verdict.member

    def test_laurent_but_not_member(self):
        # 1/x1 is Laurent initially but fails in the cluster adjacent at 1
        verdict = starfish_membership(chain_quiver(2), expr("1/x1", 2), INV)
        assert not verdict.member
        assert verdict.failing == ("L(mu_1(t0))",)

    def test_rank_deficiency_raises(self):
        with pytest.raises(StarfishRankError):
            starfish_membership(chain_quiver(3), expr("x1", 3), INV)

    def test_flavor_distinguishes_frozen_inverses(self):
        q = chain_quiver(2, frozen={2})
        f = expr("1/x2", 2)
        assert starfish_membership(q, f, INV).member
        verdict = starfish_membership(q, f, NONINV)
        assert not verdict.member
        assert "L(t0)" in verdict.failing

    def test_noninvertible_accepts_cluster_variable(self):
        q = chain_quiver(2, frozen={2})
        assert starfish_membership(q, expr("(1+x2)/x1", 2), NONINV).member

    def test_nvars_mismatch(self):
        with pytest.raises(ValueError):
            starfish_membership(chain_quiver(2), expr("x1", 3), INV)

    def test_closure_variables_are_members(self):
        q = chain_quiver(2)
        for variable in closure(initial_seed(q), 10).variables:
            assert starfish_membership(q, variable, INV).member


class TestLocalization:
    def test_certificate_d1(self):
        q = chain_quiver(2)
        f = expr("(1+x2)/(x1*x2)", 2)
        assert localization_certificate(q, 2, f, 5) == 1
        assert not starfish_membership(q, f, INV).member  # minimality at d=0

    def test_certificate_d0_for_members(self):
        q = chain_quiver(2)
        assert localization_certificate(q, 2, expr("(1+x2)/x1", 2), 5) == 0

    def test_inverse_coefficient_needs_one_power(self):
        q = chain_quiver(2)
        assert localization_certificate(q, 2, expr("1/x2", 2), 5) == 1

    def test_precondition_failure(self):
        q = chain_quiver(2)
        with pytest.raises(MembershipPreconditionError) as info:
            localization_certificate(q, 2, expr("1/(1+x1)", 2), 5)
        assert info.value.failing

    def test_bound_exhausted(self):
        q = chain_quiver(2)
        assert localization_certificate(q, 2, expr("(1+x2)/(x1*x2)", 2), 0) is None


class TestSpecialize:
    def test_commutes_on_the_worked_example(self):
        q = chain_quiver(2, frozen={2})
        seed = initial_seed(q)
        route_a = specialize_frozen(mutate_seed(seed, 1), 2)
        route_b = mutate_seed(specialize_frozen(seed, 2), 1)
        assert route_a.quiver == route_b.quiver
        assert route_a.cluster == route_b.cluster
        assert route_a.cluster[0] == expr("2/x1", 1)

    def test_initial_seed_maps_to_initial_seed(self):
        q = chain_quiver(3, frozen={2})
        small = specialize_frozen(initial_seed(q), 2)
        assert small == initial_seed(small.quiver)

    def test_requires_frozen(self):
        with pytest.raises(NotFrozenError):
            specialize_frozen(initial_seed(chain_quiver(2)), 1)

    def test_random_commutation(self):
        rng = random.Random(21)
        done = 0
        while done < 30:
            q = random_quiver(rng)
            if not q.frozen:
                continue
            f = rng.choice(sorted(q.frozen))
            seq = [rng.choice(q.mutable_vertices) for _ in range(rng.randint(1, 5))]
            seed = initial_seed(q)
            through = seed
            for k in seq:
                through = mutate_seed(through, k)
            route_a = specialize_frozen(through, f)
            route_b = specialize_frozen(seed, f)
            for k in seq:
                route_b = mutate_seed(route_b, k if k < f else k - 1)
            assert route_a.quiver == route_b.quiver
            assert route_a.cluster == route_b.cluster
            done += 1


class TestFreezingConservativity:
    def test_variables_unchanged_for_avoiding_sequences(self):
        rng = random.Random(22)
        done = 0
        while done < 25:
            q = random_quiver(rng)
            if len(q.mutable_vertices) < 2:
                continue
            k = rng.choice(q.mutable_vertices)
            others = [v for v in q.mutable_vertices if v != k]
            seq = [rng.choice(others) for _ in range(rng.randint(1, 6))]
            a = initial_seed(q)
            b = initial_seed(freeze(q, k))
            for j in seq:
                a = mutate_seed(a, j)
                b = mutate_seed(b, j)
            assert a.cluster == b.cluster
            done += 1


class TestLaurentSmoke:
    def test_random_sequences_stay_laurent(self):
        rng = random.Random(23)
        for _ in range(60):
            q = random_quiver(rng, nmax=5, mmax=2, max_mutable=4)
            seed = initial_seed(q)
            for _ in range(rng.randint(1, 8)):
                seed = mutate_seed(seed, rng.choice(q.mutable_vertices))
            for entry in seed.cluster:
                assert entry.is_laurent() is not None


class TestSeedFiles:
    def test_round_trip(self):
        seed = mutate_seed(initial_seed(chain_quiver(2, frozen={2})), 1)
        recovered = seed_from_obj(seed_to_obj(seed))
        assert recovered.quiver == seed.quiver
        assert recovered.cluster == seed.cluster
        assert recovered.history == seed.history

    def test_rejects_malformed(self):
        good = seed_to_obj(initial_seed(chain_quiver(2)))
        with pytest.raises(ValueError):
            seed_from_obj({**good, "type": "quiver"})
        with pytest.raises(ValueError):
            seed_from_obj({**good, "cluster": ["x1"]})
        with pytest.raises(ValueError):
            seed_from_obj({**good, "cluster": ["x1", "x3"]})
        with pytest.raises(ValueError):
            seed_from_obj({**good, "history": ["a"]})


class TestFlavorParse:
    def test_round_trip(self):
        assert AlgebraFlavor.parse("invertible") is INV
        assert AlgebraFlavor.parse("non-invertible") is NONINV
        with pytest.raises(ValueError):
            AlgebraFlavor.parse("both")
