import pickle

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binpart.errors import DegreeOverflowError, ParseError
from binpart.gf2poly import (
    NEG_INF,
    Poly2,
    add,
    derivative,
    divrem,
    gcd,
    mul,
    powmod,
    set_max_degree,
    square,
)

P = Poly2.parse


def polys(max_degree):
    return st.integers(min_value=0, max_value=(1 << (max_degree + 1)) - 1).map(Poly2)


def nonzero_polys(max_degree):
    return st.integers(min_value=1, max_value=(1 << (max_degree + 1)) - 1).map(Poly2)


def naive_mul(a: Poly2, b: Poly2) -> Poly2:
    out = 0
    for i in a.exponents():
        for j in b.exponents():
            out ^= 1 << (i + j)
    return Poly2(out)


class TestRepresentation:
    def test_zero_degree_is_sentinel(self):
        assert Poly2.ZERO.degree == NEG_INF
        assert Poly2.ZERO.degree < 0
        assert Poly2.ONE.degree == 0

    def test_degree_is_highest_bit(self):
        assert P("1+x+x^4+x^9").degree == 9

    def test_immutable(self):
        p = P("1+x")
        with pytest.raises(AttributeError):
            p._bits = 5

    def test_pickle(self):
        p = P("1+x^2+x^3")
        assert pickle.loads(pickle.dumps(p)) == p

    @pytest.mark.parametrize(
        "text, hexform",
        [("1+x+x^4+x^9", "0x213"), ("0", "0x0"), ("1", "0x1"), ("x", "0x2"), ("1+x^2+x^3", "0xd")],
    )
    def test_text_round_trip(self, text, hexform):
        p = P(text)
        assert str(p) == text
        assert p.to_hex() == hexform
        assert P(hexform) == p

    def test_parse_tolerates_spaces_and_order(self):
        assert P(" x^9 + x^4 + x + 1 ") == P("1+x+x^4+x^9")
        assert P("x^1+x^0") == P("1+x")

    @pytest.mark.parametrize("bad", ["", "1+", "y", "x^-1", "2", "x^", "0xzz", "x**2"])
    def test_parse_errors(self, bad):
        with pytest.raises(ParseError):
            P(bad)

    @given(polys(300))
    def test_round_trip_property(self, p):
        assert P(str(p)) == p
        assert P(p.to_hex()) == p

    def test_degree_cap(self):
        old = set_max_degree(16)
        try:
            Poly2.monomial(16)
            with pytest.raises(DegreeOverflowError):
                Poly2.monomial(17)
            with pytest.raises(DegreeOverflowError):
                mul(Poly2.monomial(9), Poly2.monomial(9))
            with pytest.raises(DegreeOverflowError):
                square(Poly2.monomial(9))
        finally:
            set_max_degree(old)


class TestExamples:
    def test_add(self):
        assert add(P("1+x"), P("1+x")) == Poly2.ZERO
        assert add(P("1+x"), P("x+x^2")) == P("1+x^2")
        assert add(P("1+x^3"), Poly2.ZERO) == P("1+x^3")

    def test_mul(self):
        assert mul(P("1+x"), P("1+x+x^2")) == P("1+x^3")
        assert P("1+x") ** 4 * P("1+x+x^2") * P("1+x^2+x^3") == P("1+x+x^4+x^9")
        assert mul(P("1+x+x^5"), Poly2.ONE) == P("1+x+x^5")

    def test_square(self):
        assert square(P("1+x")) == P("1+x^2")
        assert square(P("1+x+x^3")) == P("1+x^2+x^6")
        assert square(Poly2.ZERO) == Poly2.ZERO

    def test_divrem(self):
        assert divrem(P("1+x^7"), P("1+x+x^3")) == (P("1+x+x^2+x^4"), Poly2.ZERO)
        assert divrem(P("1+x^3"), P("1+x")) == (P("1+x+x^2"), Poly2.ZERO)
        assert divrem(P("x"), P("1+x")) == (Poly2.ONE, Poly2.ONE)

    def test_divrem_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            divrem(P("1+x"), Poly2.ZERO)

    def test_gcd(self):
        assert gcd(P("1+x^2"), P("1+x^3")) == P("1+x")
        assert gcd(P("1+x+x^3"), Poly2.ZERO) == P("1+x+x^3")
        assert gcd(P("1+x+x^2"), P("1+x+x^3")) == Poly2.ONE
        with pytest.raises(ValueError):
            gcd(Poly2.ZERO, Poly2.ZERO)

    def test_powmod(self):
        assert powmod(Poly2.X, 3, P("1+x+x^2")) == Poly2.ONE
        assert powmod(Poly2.X, 7, P("1+x+x^3")) == Poly2.ONE
        assert powmod(P("1+x+x^5"), 0, P("1+x^2+x^3")) == Poly2.ONE
        with pytest.raises(ValueError):
            powmod(Poly2.X, 2, Poly2.ONE)

    def test_derivative(self):
        assert derivative(P("1+x+x^4+x^9")) == P("1+x^8")
        assert derivative(P("1+x^2")) == Poly2.ZERO
        assert derivative(P("x")) == Poly2.ONE


class TestProperties:
    @given(polys(512), polys(512))
    def test_mul_commutes_and_matches_naive(self, a, b):
        assert mul(a, b) == mul(b, a)
        if a.weight() * b.weight() < 20000:
            assert mul(a, b) == naive_mul(a, b)

    @given(polys(512), polys(512), polys(512))
    @settings(max_examples=50)
    def test_mul_associative(self, a, b, c):
        assert mul(mul(a, b), c) == mul(a, mul(b, c))

    @given(polys(512), polys(512))
    def test_add_involution(self, a, b):
        assert add(add(a, b), b) == a

    @given(nonzero_polys(512), nonzero_polys(512))
    def test_mul_degree(self, a, b):
        assert mul(a, b).degree == a.degree + b.degree

    @given(polys(1024))
    def test_square_matches_mul(self, a):
        assert square(a) == mul(a, a)

    @given(polys(9000), polys(9000))
    @settings(max_examples=10, deadline=None)
    def test_karatsuba_path_matches_naive(self, a, b):
        # both above the 4096-bit threshold most of the time
        from binpart.gf2poly import _mul_school

        assert mul(a, b).bits == _mul_school(a.bits, b.bits)

    @given(polys(600), nonzero_polys(300))
    def test_divrem_postcondition(self, a, b):
        q, r = divrem(a, b)
        assert add(mul(q, b), r) == a
        assert r.degree < b.degree

    @given(nonzero_polys(200), polys(200), polys(200))
    def test_gcd_divides(self, g, a, b):
        d = gcd(a, b) if (a or b) else None
        if d is not None:
            assert divrem(a, d)[1] == Poly2.ZERO
            assert divrem(b, d)[1] == Poly2.ZERO
        ga, gb = mul(g, a), mul(g, b)
        if ga or gb:
            assert divrem(gcd(ga, gb), g)[1] == Poly2.ZERO

    @given(polys(200), st.integers(min_value=0, max_value=400), nonzero_polys(40))
    def test_powmod_matches_repeated_multiplication(self, base, e, m):
        if m.degree < 1:
            return
        expect = Poly2.ONE % m
        for _ in range(e):
            expect = mul(expect, base) % m
        assert powmod(base, e, m) == expect

    @given(polys(300))
    def test_derivative_product_rule(self, a):
        # (a^2)' = 2 a a' = 0 in characteristic 2
        assert derivative(square(a)) == Poly2.ZERO
