import random

import pytest
from hypothesis import given, strategies as st

from quatsplit.errors import DomainError
from quatsplit.fppoly import (
    ExtensionDegree,
    FpPolynomial,
    extension_degree,
    factor,
    is_irreducible,
    parse_poly,
    poly_binomial,
)

from oracles import irreducible_by_trial_division, monic_polys, poly_mul


def P(p, *coeffs):
    return FpPolynomial(p, coeffs)


class TestRepresentation:
    def test_reduction_and_strip(self):
        f = P(7, 9, -1, 0, 7)
        assert f.coeffs == (2, 6)
        assert f.degree == 1
        assert P(5).degree == -1

    def test_nonprime_modulus(self):
        with pytest.raises(DomainError):
            P(9, 1, 1)

    def test_binomial(self):
        assert poly_binomial(6, 2, 7) == P(7, 5, 0, 0, 0, 0, 0, 1)
        assert poly_binomial(1, 0, 11) == P(11, 0, 1)
        assert poly_binomial(3, 3, 7).coeffs == (4, 0, 0, 1)
        with pytest.raises(DomainError):
            poly_binomial(0, 1, 7)

    def test_render(self):
        f = poly_binomial(6, 2, 7)
        assert f.render() == "x^6 + 5"
        assert f.render(signed=True) == "x^6 - 2"
        assert P(7, 4, 0, 0, 1).render(signed=True) == "x^3 - 3"
        assert P(5, 1, 3, 2).render() == "2x^2 + 3x + 1"
        assert P(5, 0, 1).render() == "x"
        assert P(5).render() == "0"
        assert P(7, 0, 0, 6).render(signed=True) == "-x^2"

    @pytest.mark.parametrize("text, coeffs", [
        ("x^6 - 2", (5, 0, 0, 0, 0, 0, 1)),
        ("Y^6-2", (5, 0, 0, 0, 0, 0, 1)),
        ("3*x^2 + x + 1", (1, 1, 3)),
        ("2x^2 + 3x + 1", (1, 3, 2)),
        ("-x", (0, 6)),
        ("5", (5,)),
        ("x^2 + x^2", (0, 0, 2)),
    ])
    def test_parse(self, text, coeffs):
        assert parse_poly(text, 7).coeffs == coeffs

    @pytest.mark.parametrize("text", ["", "x^2 y", "x^2 + y", "x^", "2 3"])
    def test_parse_errors(self, text):
        with pytest.raises(DomainError):
            parse_poly(text, 7)

    @given(st.lists(st.integers(0, 10), min_size=1, max_size=9), st.booleans())
    def test_render_parse_roundtrip(self, coeffs, signed):
        f = FpPolynomial(11, tuple(coeffs))
        if f.degree >= 0:
            assert parse_poly(f.render(signed=signed), 11) == f

    def test_arithmetic(self):
        f, g = P(7, 1, 2, 3), P(7, 6, 1)
        q, r = divmod(f * g + P(7, 4), g)
        assert q == f and r == P(7, 4)
        assert (f + g) - g == f
        assert f(2) == (1 + 4 + 12) % 7
        with pytest.raises(ZeroDivisionError):
            divmod(f, P(7))


class TestIrreducible:
    def test_examples(self):
        assert not is_irreducible(poly_binomial(6, 2, 7))
        assert is_irreducible(P(13, 5, 1))
        assert is_irreducible(poly_binomial(6, 3, 7))

    def test_constant_rejected(self):
        with pytest.raises(DomainError):
            is_irreducible(P(7, 3))

    def test_non_monic(self):
        # 3x^2 + 2 = 3(x^2 + 4) = 3(x - 1)(x + 1) over F_5
        assert not is_irreducible(P(5, 2, 0, 3))
        # 2x^2 + 1 = 2(x^2 + 3), and -3 = 2 is not a square mod 5
        assert is_irreducible(P(5, 1, 0, 2))

    @pytest.mark.parametrize("p, deg", [(2, d) for d in range(1, 9)] + [(3, d) for d in range(1, 7)]
                             + [(5, d) for d in range(1, 5)] + [(7, d) for d in range(1, 4)]
                             + [(11, d) for d in range(1, 3)])
    def test_exhaustive_small(self, p, deg):
        for c in monic_polys(p, deg):
            assert is_irreducible(FpPolynomial(p, tuple(c))) == irreducible_by_trial_division(c, p), c

    def test_count_of_irreducibles(self):
        # Gauss: (27 - 3)/3 = 8 monic irreducible cubics over F_3
        count = sum(is_irreducible(FpPolynomial(3, tuple(c))) for c in monic_polys(3, 3))
        assert count == 8


class TestFactor:
    def test_sextic_binomial_mod_seven(self):
        result = factor(poly_binomial(6, 2, 7))
        assert [(g.coeffs, e) for g, e in result] == [((3, 0, 0, 1), 1), ((4, 0, 0, 1), 1)]
        assert [g.render(signed=True) for g, _ in result] == ["x^3 + 3", "x^3 - 3"]

    def test_examples(self):
        assert [(g.coeffs, e) for g, e in factor(P(7, 6, 0, 1))] == [((1, 1), 1), ((6, 1), 1)]
        assert [(g.coeffs, e) for g, e in factor(poly_binomial(6, 3, 7))] == [((4, 0, 0, 0, 0, 0, 1), 1)]

    def test_multiplicities(self):
        # (x+1)^3 (x^2+1)^2 over F_3: p-th power part exercises the root extraction
        f = P(3, 1, 1) ** 3 * P(3, 1, 0, 1) ** 2
        assert [(g.coeffs, e) for g, e in factor(f)] == [((1, 1), 3), ((1, 0, 1), 2)]
        g = P(2, 1, 1) ** 4 * P(2, 1, 1, 1)
        assert [(h.coeffs, e) for h, e in factor(g)] == [((1, 1), 4), ((1, 1, 1), 1)]

    def test_x_to_the_q_minus_x(self):
        # x^9 - x is the product of all monic irreducibles of degree 1 and 2 over F_3
        result = factor(parse_poly("x^9 - x", 3))
        assert [g.degree for g, _ in result] == [1, 1, 1, 2, 2, 2]
        assert all(e == 1 for _, e in result)

    def test_reassembly_random(self):
        rng = random.Random(11)
        for _ in range(150):
            p = rng.choice([2, 3, 5, 7, 11, 13, 101])
            deg = rng.randint(1, 12)
            coeffs = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
            f = FpPolynomial(p, tuple(coeffs))
            result = factor(f)
            prod = [f.leading]
            for g, e in result:
                assert g.is_monic()
                assert is_irreducible(g)
                for _ in range(e):
                    prod = poly_mul(prod, list(g.coeffs), p)
            assert tuple(prod) == f.coeffs
            assert sum(g.degree * e for g, e in result) == f.degree
            assert [g.sort_key() for g, _ in result] == sorted(g.sort_key() for g, _ in result)


class TestExtensionDegree:
    def test_examples(self):
        assert extension_degree(2, 6, 7) == ExtensionDegree((3, 3))
        assert extension_degree(2, 6, 7).minimum == 3
        assert extension_degree(1, 5, 11).minimum == 1
        assert extension_degree(3, 6, 7).degrees == (6,)

    def test_p_divides_a(self):
        with pytest.raises(DomainError):
            extension_degree(14, 3, 7)

    def test_roundtrip(self):
        e = extension_degree(2, 6, 7)
        assert ExtensionDegree.from_dict(e.to_dict()) == e
