import random
from fractions import Fraction

import pytest

import indval as iv
from indval import (
    ChainError,
    DomainError,
    Poly,
    Value,
    chain_from_json,
    expansion_report,
    is_equivalent,
    is_minimal,
    is_unit,
    key_semivaluation,
    phi_expansion,
    validate_chain,
)
from conftest import make_rand_poly

P = Poly.parse
F = Fraction


class TestValidation:
    def test_single_gauss_step(self, v2):
        nu = validate_chain([("x", F(1, 2))], v2)
        assert nu.length == 1 and nu.rank == 1

    def test_gamma_too_small(self, nu1, v2):
        with pytest.raises(ChainError, match="must exceed"):
            validate_chain([("x", F(1, 2)), ("x^2+2", F(1, 2))], v2)

    def test_non_key_rejected(self, v2):
        with pytest.raises(ChainError, match="not a key"):
            validate_chain([("x", F(1, 2)), ("x^2+x", F(3, 2))], v2)

    def test_equivalent_key_step_rejected(self, v2):
        with pytest.raises(ChainError, match="equivalent"):
            validate_chain([("x", F(1, 2)), ("x", 1)], v2)

    def test_first_key_linear(self, v2):
        with pytest.raises(ChainError, match="monic linear"):
            validate_chain([("x^2+2", F(1, 2))], v2)

    def test_degree_divisibility(self, v2):
        with pytest.raises(ChainError, match="multiple"):
            validate_chain(
                [("x", F(1, 2)), ("x^2+2", F(3, 2)), ("x^3+2", 4)], v2
            )

    def test_monic_required(self, v2):
        with pytest.raises(ChainError, match="monic"):
            validate_chain([("2x", 1)], v2)

    def test_infinite_gamma_rejected(self, v2):
        with pytest.raises(ChainError, match="infinite"):
            validate_chain([("x", iv.INFINITY)], v2)

    def test_incommensurable_must_be_last(self, v2):
        with pytest.raises(ChainError, match="last"):
            validate_chain(
                [("x", Value.of((0, 1))), ("x^2+2", Value.of((0, 3)))], v2
            )

    def test_equal_degree_nonequivalent_step(self, gauss2, v2):
        # e=1 admits a same-degree non-equivalent key
        nu = validate_chain([("x", 1), ("x+2", 2)], v2)
        assert nu.length == 2
        assert nu(P("x+2")) == Value.of(2)
        assert nu(P("x")) == Value.of(1)

    def test_json_roundtrip(self, nu2):
        again = chain_from_json(nu2.to_json())
        assert again == nu2

    def test_json_rank2(self, nu_inf):
        again = chain_from_json(nu_inf.to_json())
        assert again == nu_inf


class TestExpansion:
    def test_examples(self):
        assert phi_expansion(P("x^4+4"), P("x^2+2")) == [
            Poly.constant(8),
            Poly.constant(-4),
            Poly.one(),
        ]
        assert phi_expansion(P("x^2+2"), P("x^2+2")) == [Poly.zero(), Poly.one()]
        assert phi_expansion(P("x^3+4x"), P("x")) == [
            Poly.zero(),
            Poly.constant(4),
            Poly.zero(),
            Poly.one(),
        ]

    def test_recombines(self, rand_poly):
        rng = random.Random(21)
        for _ in range(80):
            f = rand_poly(rng, 18)
            phi = rand_poly(rng, 4, monic=True)
            if phi.is_constant:
                continue
            coeffs = phi_expansion(f, phi)
            total = Poly.zero()
            for s, c in enumerate(coeffs):
                assert c.is_zero or c.degree < phi.degree
                total = total + c * phi**s
            assert total == f


class TestEvaluation:
    def test_examples(self, nu1, nu2, nu_inf):
        assert nu1(P("x^2+2")) == Value.of(1)
        assert nu2(P("x^4+4")) == Value.of(3)
        assert nu_inf(P("x^2+2")) == Value.of((0, 2))

    def test_agrees_with_vp_on_constants(self, nu1, nu2, v2):
        rng = random.Random(22)
        for _ in range(50):
            c = F(rng.randrange(-400, 401), rng.randrange(1, 100))
            if c == 0:
                continue
            for nu in (nu1, nu2):
                assert nu(Poly.constant(c)) == v2.value(c)

    def test_zero_is_infinite(self, nu2, nu_inf):
        assert nu2(Poly.zero()).is_infinite
        assert nu_inf(Poly.zero()).is_infinite

    def test_closed_form_oracle_single_step(self, nu1, nu3p, rand_poly):
        # independent oracle: for [(x, q)] the value of sum c_s x^s is
        # min over s of vp(c_s) + s*q, computed here with raw Fractions
        rng = random.Random(230)
        for nu in (nu1, nu3p):
            p = nu.base.p
            q = nu.top.gamma.coords[0]

            def order(c):
                k = 0
                num, den = c.numerator, c.denominator
                while num % p == 0:
                    num //= p
                    k += 1
                while den % p == 0:
                    den //= p
                    k -= 1
                return k

            for _ in range(60):
                f = rand_poly(rng, 14)
                expect = min(
                    F(order(c)) + s * q
                    for s, c in enumerate(f.coeffs)
                    if c != 0
                )
                assert nu(f) == Value.of(expect)

    def test_axioms_random(self, nu1, nu2, nu3p, nu_inf, rand_poly):
        rng = random.Random(23)
        for _ in range(120):
            f, g = rand_poly(rng, 12), rand_poly(rng, 12)
            for nu in (nu1, nu2, nu3p, nu_inf):
                assert nu(f * g) == nu(f) + nu(g)
                if not (f + g).is_zero:
                    assert nu(f + g) >= min(nu(f), nu(g))

    def test_min_over_monomials_every_level(self, nu2, nu4, rand_poly):
        # the expansion minimum computes mu_i at every level i: phi_i is
        # minimal for its own prefix valuation (not for later ones, where
        # ties between its monomials can cancel upward)
        rng = random.Random(24)
        for _ in range(40):
            f = rand_poly(rng, 10)
            for nu in (nu2, nu4):
                for i in range(1, nu.length + 1):
                    mu_i = nu.prefix(i)
                    phi = mu_i.top.phi
                    vals = [
                        mu_i(c * phi**s)
                        for s, c in enumerate(phi_expansion(f, phi))
                        if not c.is_zero
                    ]
                    assert min(vals) == mu_i(f)


class TestReport:
    def test_examples(self, nu1):
        rep = expansion_report(nu1, P("x^4+4"))
        assert rep.indices == (0, 4)
        assert (rep.s, rep.s_prime, rep.mu) == (0, 4, Value.of(2))
        assert expansion_report(nu1, P("x")).indices == (1,)
        assert expansion_report(nu1, Poly.constant(5)).indices == (0,)

    def test_zero_rejected(self, nu1):
        with pytest.raises(DomainError):
            expansion_report(nu1, Poly.zero())

    def test_s_additivity(self, nu1, nu2, rand_poly):
        rng = random.Random(25)
        for _ in range(60):
            f, g = rand_poly(rng, 10), rand_poly(rng, 10)
            for nu in (nu1, nu2):
                rf, rg, rfg = (
                    expansion_report(nu, f),
                    expansion_report(nu, g),
                    expansion_report(nu, f * g),
                )
                assert rfg.s == rf.s + rg.s
                assert rfg.s_prime == rf.s_prime + rg.s_prime

    def test_equivalence_preserves_indices_and_coeffs(self, nu1, nu2, rand_poly):
        rng = random.Random(26)
        for _ in range(60):
            f = rand_poly(rng, 9)
            pert = rand_poly(rng, 9)
            for nu in (nu1, nu2):
                g = f + pert.scale(F(2) ** 14)
                if g.is_zero or not is_equivalent(nu, f, g):
                    continue
                rf, rg = expansion_report(nu, f), expansion_report(nu, g)
                assert rf.indices == rg.indices
                for s in rf.indices:
                    assert is_equivalent(nu, rf.coeffs[s], rg.coeffs[s])


class TestPredicates:
    def test_equivalence_examples(self, nu1):
        assert is_equivalent(nu1, P("x^2+2"), P("x^2-2"))
        assert is_equivalent(nu1, P("x"), P("x"))
        assert not is_equivalent(nu1, P("x"), P("x+1"))

    def test_unit_examples(self, nu1):
        assert is_unit(nu1, P("x+1"))
        assert is_unit(nu1, Poly.one())
        assert not is_unit(nu1, P("x^2+2"))
        with pytest.raises(DomainError):
            is_unit(nu1, Poly.zero())

    def test_small_degree_is_unit(self, nu2, nu4):
        # every non-zero polynomial of degree < deg(phi_r) is a unit
        rng = random.Random(27)
        for nu in (nu2, nu4):
            for _ in range(30):
                f = make_rand_poly(rng, nu.top_degree - 1)
                assert is_unit(nu, f)

    def test_minimal_examples(self, nu1):
        assert is_minimal(nu1, P("x^2+2"))
        assert not is_minimal(nu1, P("x^2+x"))
        assert is_minimal(nu1, P("x"))
        with pytest.raises(DomainError):
            is_minimal(nu1, Poly.constant(3))

    def test_minimal_power(self, nu1, nu2, rand_poly):
        rng = random.Random(28)
        for _ in range(25):
            f = rand_poly(rng, 6, monic=True)
            if f.is_constant:
                continue
            for nu in (nu1, nu2):
                base = is_minimal(nu, f)
                for m in (2, 3, 4):
                    assert is_minimal(nu, f**m) == base

    def test_weighted_bound(self, nu1, nu2, rand_poly):
        rng = random.Random(29)
        for nu in (nu1, nu2):
            cap = nu.weighted_cap()
            for _ in range(60):
                f = rand_poly(rng, 9, monic=True)
                if f.is_constant:
                    continue
                w = nu(f).over(f.degree)
                assert w <= cap
                assert (w == cap) == is_minimal(nu, f)

    def test_product_rule_below_key_degree(self, nu2, nu4, rand_poly):
        # for deg a, b < n with ab = c + d*phi: ab ~ c and mu(c) <= mu(d*phi)
        rng = random.Random(30)
        for nu in (nu2, nu4):
            n = nu.top_degree
            phi = nu.top.phi
            for _ in range(40):
                a = make_rand_poly(rng, n - 1)
                b = make_rand_poly(rng, n - 1)
                coeffs = phi_expansion(a * b, phi)
                c = coeffs[0]
                assert is_equivalent(nu, a * b, c)
                if len(coeffs) > 1 and not coeffs[1].is_zero:
                    assert nu(c) <= nu(coeffs[1] * phi)


class TestIncommensurable:
    def test_singleton_argmin(self, nu_inf, rand_poly):
        rng = random.Random(31)
        for _ in range(60):
            f = rand_poly(rng, 12)
            assert len(expansion_report(nu_inf, f).indices) == 1

    def test_minimal_via_s(self, nu_inf):
        assert is_minimal(nu_inf, P("x"))
        assert is_minimal(nu_inf, P("x^2+2x"))  # s = 2 = deg


class TestWeightedCap:
    def test_examples(self, nu1, nu2, nu_inf):
        assert nu1.weighted_cap() == Value.of(F(1, 2))
        assert nu2.weighted_cap() == Value.of(F(3, 4))
        assert nu_inf.weighted_cap() == Value.of((0, 1))


class TestCanonicalMonomials:
    def test_examples(self, nu1, nu2, gauss2):
        assert nu1.ramification_data() == (2, Poly.constant(F(1, 2)))
        assert nu2.ramification_data() == (1, P("x").scale(F(1, 4)))
        assert gauss2.ramification_data() == (1, Poly.constant(F(1, 2)))
        assert nu1.canonical_monomial(Value.of(3)) == Poly.constant(8)
        assert nu2.canonical_monomial(Value.of(F(-3, 2))) == P("x").scale(F(1, 4))
        assert nu2.canonical_monomial(Value.of(F(1, 2))) == P("x")

    def test_not_representable(self, nu1):
        with pytest.raises(DomainError):
            nu1.canonical_monomial(Value.of(F(1, 3)))

    def test_incommensurable_ram_refused(self, nu_inf):
        with pytest.raises(DomainError):
            nu_inf.ramification_data()

    def test_value_and_degree(self, nu4):
        rng = random.Random(32)
        e, u = nu4.ramification_data()
        assert nu4(u * nu4.top.phi**e) == Value.of(0)
        for _ in range(25):
            c = rng.randrange(-6, 7)
            m = rng.randrange(0, 2)
            beta = Value.of(F(c) + F(m, 2))
            mono = nu4.canonical_monomial(beta)
            assert nu4(mono) == beta
            assert mono.degree < nu4.top_degree


class TestSemivaluation:
    def test_examples(self, nu1):
        assert key_semivaluation(nu1, P("x^2+2"), P("x")) == Value.of(F(1, 2))
        assert key_semivaluation(nu1, P("x^2+2"), P("x^2+2")).is_infinite
        assert key_semivaluation(nu1, P("x^2+2"), P("x^4+4")) == Value.of(3)

    def test_non_key_rejected(self, nu1):
        with pytest.raises(DomainError):
            key_semivaluation(nu1, P("x^2+x"), P("x"))

    def test_is_valuation_on_quotient(self, nu1, rand_poly):
        rng = random.Random(33)
        chi = P("x^2+2")
        for _ in range(50):
            f, g = rand_poly(rng, 7), rand_poly(rng, 7)
            wf = key_semivaluation(nu1, chi, f)
            wg = key_semivaluation(nu1, chi, g)
            wfg = key_semivaluation(nu1, chi, f * g)
            if not wf.is_infinite and not wg.is_infinite:
                assert wfg == wf + wg
