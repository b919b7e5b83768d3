from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import laurent_oracle, padd, pmul, same_fraction
from sfcalc import GF, QQ, Frac, frac_arith, is_rational, laurent_expand, parse_frac
from sfcalc.frac import FracSyntaxError
from sfcalc.laurent import convolve, laurent_degree
from sfcalc.poly import Poly

x = Frac.x()

small = st.integers(-4, 4)
polys = st.lists(small, min_size=0, max_size=4)


@st.composite
def fracs(draw, nonzero=False):
    num = draw(polys)
    den = draw(polys.filter(lambda c: any(c)))
    if nonzero:
        assume(any(num))
    return Frac(Poly(num), Poly(den))


@st.composite
def rational_fracs(draw):
    num = draw(polys)
    den = draw(st.lists(small, min_size=1, max_size=3).filter(lambda c: c[0] != 0))
    return Frac(Poly(num), Poly(den))


# scalars


def test_rationals_are_lowest_terms():
    q = QQ("-6/4")
    assert (q.numerator, q.denominator) == (-3, 2)


def test_prime_field_arithmetic():
    F = GF(5)
    assert F(3) * F(2) == F(1)
    assert F(1) / F(3) == F(2)
    assert F("1/2") == F(3)
    assert -F(2) == F(3)
    with pytest.raises(ZeroDivisionError):
        F(1) / F(0)


def test_gf_rejects_composite():
    with pytest.raises(ValueError):
        GF(4)


# polynomials


def test_poly_trims_and_zero_is_empty():
    assert Poly([1, 0, 0]).coeffs == (QQ(1),)
    assert Poly([0, 0]).coeffs == ()
    assert not Poly([])


@given(polys, polys)
def test_poly_ring_matches_list_oracle(a, b):
    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]
    while fa and fa[-1] == 0:
        fa.pop()
    while fb and fb[-1] == 0:
        fb.pop()
    assert list((Poly(a) * Poly(b)).coeffs) == pmul(fa, fb)
    assert list((Poly(a) + Poly(b)).coeffs) == padd(fa, fb)


@given(polys, polys.filter(lambda c: any(c)))
def test_poly_divmod(a, b):
    q, r = divmod(Poly(a), Poly(b))
    assert q * Poly(b) + r == Poly(a)
    assert r.degree < Poly(b).degree


# fractions


def test_frac_examples():
    assert frac_arith("add", 1 / x, Frac.one()) == (x + 1) / x
    assert frac_arith("inv", x / (x + 1)) == (x + 1) / x
    assert frac_arith("mul", 1 / (1 - x), 1 - x) == Frac.one()
    assert frac_arith("neg", x) == -x


def test_inverse_of_zero_is_domain_error():
    with pytest.raises(ZeroDivisionError):
        frac_arith("inv", Frac.zero())


def test_normal_form():
    p = Frac(Poly([2, 4]), Poly([0, 6]))
    assert p.den.coeffs[-1] == 1
    assert p.num.coeffs == (QQ("1/3"), QQ("2/3"))
    z = Frac(Poly([]), Poly([1, 5]))
    assert z.num.coeffs == () and z.den.coeffs == (QQ(1),)


@given(fracs(), fracs(), fracs())
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == Frac.zero()


@given(fracs(nonzero=True))
def test_inverse_law(a):
    assert a * a.inv() == Frac.one()


@given(fracs(), fracs())
def test_canonicity_is_semantic_equality(a, b):
    assert (a == b) == same_fraction(a, b)
    if a == b:
        assert (a.num, a.den) == (b.num, b.den)
        assert hash(a) == hash(b)


@given(fracs())
def test_print_parse_round_trip(a):
    assert parse_frac(str(a)) == a


def test_parse_syntax():
    assert parse_frac("(1 + 2*x) / (1 - x)") == (1 + 2 * x) / (1 - x)
    assert parse_frac("x^2/2") == x * x / 2
    assert parse_frac("3/2*x - 1/3") == Frac.const(QQ("3/2")) * x - Frac.const(QQ("1/3"))
    with pytest.raises(FracSyntaxError):
        parse_frac("1 + ")
    with pytest.raises(FracSyntaxError):
        parse_frac("y")


# Laurent expansion


def test_laurent_examples():
    assert laurent_expand(1 / x, -2, 2).coeffs == (0, 1, 0, 0)
    assert laurent_expand(3 + 2 * x, 0, 3).coeffs == (3, 2, 0)
    assert laurent_expand(1 / (1 - x), 0, 4).coeffs == (1, 1, 1, 1)
    assert laurent_expand(Frac.zero(), -3, 3).coeffs == (0,) * 6


def test_laurent_geometric_matches_long_division():
    # frozen from the long-division oracle
    p = (1 + 2 * x) / (1 - x - x * x)
    assert laurent_oracle(p, 0, 8) == [1, 3, 4, 7, 11, 18, 29, 47]
    assert list(laurent_expand(p, 0, 8).coeffs) == [1, 3, 4, 7, 11, 18, 29, 47]


@given(fracs(), st.integers(-4, 0), st.integers(1, 8))
def test_laurent_matches_oracle(p, lo, span):
    assert list(laurent_expand(p, lo, lo + span).coeffs) == laurent_oracle(p, lo, lo + span)


@given(fracs(nonzero=True), st.integers(2, 10))
def test_laurent_inverse_convolution(p, H):
    d = laurent_degree(p)
    q = p.inv()
    lo = min(d, -d) - 1
    a = laurent_expand(p, lo, H + abs(d) + 2)
    b = laurent_expand(q, lo, H + abs(d) + 2)
    prod = convolve(a, b, 0, H)
    assert list(prod.coeffs) == [1] + [0] * (H - 1)


@given(rational_fracs(), st.integers(1, 10))
def test_rational_has_no_past(p, H):
    assert is_rational(p)
    assert all(c == 0 for c in laurent_expand(p, -H, 0).coeffs)


def test_is_rational_examples():
    assert is_rational(1 / (1 - x))
    assert not is_rational(1 / x)
    assert is_rational(x)
    assert is_rational(Frac.zero())


@given(fracs())
def test_is_rational_iff_degree_nonnegative(p):
    if p:
        assert is_rational(p) == (laurent_degree(p) >= 0)


def test_finite_field_laurent():
    y = Frac.x(GF(3))
    assert [int(c) for c in laurent_expand(1 / (1 - 2 * y), 0, 5).coeffs] == [1, 2, 1, 2, 1]
