import random
from fractions import Fraction

import pytest

from indval import (
    DomainError,
    PadicValuation,
    ParseError,
    Poly,
    Value,
    poly_divmod,
    poly_ext_gcd,
)


class TestPadic:
    def test_value_examples(self):
        v2 = PadicValuation(2)
        assert v2.value(8) == Value.of(3)
        assert v2.value(Fraction(3, 4)) == Value.of(-2)
        assert v2.value(0).is_infinite

    def test_residue_examples(self):
        assert PadicValuation(2).residue(3) == 1
        assert PadicValuation(5).residue(Fraction(7, 3)) == 4
        with pytest.raises(DomainError):
            PadicValuation(2).residue(Fraction(1, 2))

    def test_residue_lift_inverse(self):
        v5 = PadicValuation(5)
        for z in range(5):
            assert v5.residue(v5.lift(z)) == z
        assert v5.residue(Fraction(12, 7) - v5.lift(v5.residue(Fraction(12, 7)))) == 0

    def test_valuation_axioms_random(self):
        rng = random.Random(3)
        v3 = PadicValuation(3)
        for _ in range(300):
            a = Fraction(rng.randrange(-500, 501), rng.randrange(1, 400))
            b = Fraction(rng.randrange(-500, 501), rng.randrange(1, 400))
            if a and b:
                assert v3.value(a * b) == v3.value(a) + v3.value(b)
            if a + b:
                assert v3.value(a + b) >= min(v3.value(a), v3.value(b))

    def test_residue_homomorphism(self):
        rng = random.Random(4)
        v7 = PadicValuation(7)
        for _ in range(200):
            a = Fraction(rng.randrange(-60, 61), rng.choice([1, 2, 3, 4, 5, 6, 8, 9]))
            b = Fraction(rng.randrange(-60, 61), rng.choice([1, 2, 3, 4, 5, 6, 8, 9]))
            assert v7.residue(a * b) == (v7.residue(a) * v7.residue(b)) % 7
            assert v7.residue(a + b) == (v7.residue(a) + v7.residue(b)) % 7

    def test_prime_check(self):
        with pytest.raises(DomainError):
            PadicValuation(6)
        with pytest.raises(DomainError):
            PadicValuation(1)
        PadicValuation(101)


class TestPolyDivmod:
    def test_examples(self):
        q, r = poly_divmod(Poly.parse("x^4+4"), Poly.parse("x^2+2"))
        assert q == Poly.parse("x^2-2") and r == Poly.constant(8)
        assert q * Poly.parse("x^2+2") + r == Poly.parse("x^4+4")
        assert poly_divmod(Poly.parse("x"), Poly.parse("x")) == (Poly.one(), Poly.zero())
        assert poly_divmod(Poly.constant(5), Poly.parse("x^2+2")) == (
            Poly.zero(),
            Poly.constant(5),
        )

    def test_requires_monic_nonconstant(self):
        with pytest.raises(DomainError):
            poly_divmod(Poly.parse("x"), Poly.parse("2x"))
        with pytest.raises(DomainError):
            poly_divmod(Poly.parse("x"), Poly.constant(3))

    def test_roundtrip_random(self):
        rng = random.Random(5)
        for _ in range(200):
            df, dg = rng.randrange(0, 31), rng.randrange(1, 16)
            f = Poly([Fraction(rng.randrange(-99, 100), rng.randrange(1, 9)) for _ in range(df + 1)])
            g = Poly([Fraction(rng.randrange(-99, 100), rng.randrange(1, 9)) for _ in range(dg)] + [Fraction(1)])
            q, r = poly_divmod(f, g)
            assert q * g + r == f
            assert r.is_zero or r.degree < g.degree


class TestPolyParsePrint:
    def test_grammar(self):
        assert Poly.parse("3*x^2 + x - 5") == Poly([-5, 1, 3])
        assert Poly.parse("3x^2+x-5") == Poly([-5, 1, 3])
        assert Poly.parse("1/2 * x^3") == Poly([0, 0, 0, Fraction(1, 2)])
        assert Poly.parse("-x") == Poly([0, -1])
        assert Poly.parse("7/3") == Poly.constant(Fraction(7, 3))

    def test_roundtrip(self):
        rng = random.Random(6)
        for _ in range(120):
            f = Poly([Fraction(rng.randrange(-30, 31), rng.randrange(1, 12)) for _ in range(rng.randrange(1, 9))])
            assert Poly.parse(str(f)) == f

    def test_rejects_junk(self):
        for bad in ["", "x +", "x^", "2**x", "y+1"]:
            with pytest.raises(ParseError):
                Poly.parse(bad)

    def test_zero_degree_marker(self):
        assert Poly.zero().degree is None
        assert Poly.constant(3).degree == 0


class TestExtGcd:
    def test_bezout_for_coprime(self):
        # a key polynomial is coprime to anything of smaller degree
        chi = Poly.parse("x^2+2")
        for a in [Poly.parse("x"), Poly.parse("x+1"), Poly.constant(3)]:
            d, s, t = poly_ext_gcd(a, chi)
            assert d == Poly.one()
            assert s * a + t * chi == Poly.one()

    def test_common_factor(self):
        f = Poly.parse("x^2-1")
        g = Poly.parse("x^2+2x+1")
        d, s, t = poly_ext_gcd(f, g)
        assert d == Poly.parse("x+1")
        assert s * f + t * g == d
