from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hecke_gram import poly as P
from hecke_gram.poly import Laurent, Neither, Palindromic, SkewPalindromic
import oracles

F13 = (1, 4, 8, 11, 12, 12, 12, 12, 12, 12, 11, 8, 4, 1)
DIAG = (1, 0, 3, 0, 3, 0, 1)

coeff = st.integers(-30, 30)
polys = st.lists(coeff, max_size=10).map(P.trim)
nonzero_polys = polys.filter(bool)


def test_evaluate_examples():
    assert P.evaluate(F13, 37) == 271378870503231142344
    assert P.evaluate(P.ZERO, 12345) == 0
    assert P.evaluate((0, 0, 1), -3) == 9
    assert Laurent.make(-2, (1,)).evaluate(2) == Fraction(1, 4)
    with pytest.raises(ZeroDivisionError):
        Laurent.make(-1, (1,)).evaluate(0)


def test_trim_and_degree():
    assert P.trim([1, 0, 0]) == (1,)
    assert P.trim([0, 0]) == ()
    assert P.degree(()) == -1
    assert P.degree((0, 0, 5)) == 2
    assert P.valuation((0, 0, 5)) == 2


@pytest.mark.parametrize("f, content, prim", [
    ((4, 6), 2, (2, 3)),
    ((-1, 1), 1, (-1, 1)),
    ((3, 0, Fraction(3, 2)), Fraction(3, 2), (2, 0, 1)),
    ((2, -4), 2, (1, -2)),
])
def test_content_and_primitive(f, content, prim):
    assert P.content_and_primitive(f) == (content, prim)


def test_content_of_zero_rejected():
    with pytest.raises(ValueError):
        P.content_and_primitive(())


@pytest.mark.parametrize("f, g, expected", [
    ((-1, 0, 1), (-1, 1), (-1, 1)),
    ((3, -6), (), (-3, 6)),
    ((1, 1, 0, 1, 1), (-1, 0, 0, 1), (1,)),
    ((1, 2, 2, 1), (-1, 0, 0, 1), (1, 1, 1)),
])
def test_gcd_examples(f, g, expected):
    assert P.gcd_subresultant(f, g) == expected


def test_gcd_of_zero_with_nonprimitive_keeps_content():
    assert P.gcd_subresultant((), (2, 4)) == (2, 4)


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_matches_euclid_oracle(f, g, h):
    a, b = P.mul(f, h), P.mul(g, h)
    d = P.gcd_subresultant(a, b)
    assert d[-1] > 0
    assert P.pseudo_rem(a, d) == () and P.pseudo_rem(b, d) == ()
    ref = oracles.to_sympy(a).gcd(oracles.to_sympy(b))
    ref = oracles.from_sympy(ref.monic())
    assert P.scale(d, Fraction(1, d[-1])) == tuple(Fraction(x) for x in ref)


@given(polys, polys, st.integers(-50, 50))
def test_evaluation_is_multiplicative(f, g, b):
    assert P.evaluate(P.mul(f, g), b) == P.evaluate(f, b) * P.evaluate(g, b)


@given(polys, polys)
def test_mul_matches_schoolbook(f, g):
    assert P.mul(f, g) == oracles.poly_mul(f, g)
    assert P.add(f, g) == oracles.poly_add(f, g)


def test_divmod_and_exact_div():
    q, r = P.divmod_poly((-1, 0, 1), (1, 1))
    assert (q, r) == ((-1, 1), ())
    assert P.exact_div((-1, 0, 1), (-1, 1)) == (1, 1)
    with pytest.raises(ArithmeticError):
        P.exact_div((1, 0, 1), (1, 1))


def test_star_examples():
    assert Laurent.make(2, (1,)).star() == Laurent.make(-2, (1,))
    sym = Laurent.make(-1, (1, 0, 1))
    assert sym.star() == sym
    d = Laurent.from_poly(DIAG)
    assert d.star() == Laurent.make(-6, (1,)) * d


laurents = st.builds(Laurent.make, st.integers(-5, 5), st.lists(coeff, max_size=6))


@given(laurents, laurents)
def test_star_is_ring_involution(f, g):
    assert f.star().star() == f
    assert (f + g).star() == f.star() + g.star()
    assert (f * g).star() == f.star() * g.star()


def test_laurent_normalizes_valuation():
    f = Laurent.make(-3, (0, 0, 2, 1))
    assert f == Laurent(-1, (2, 1))
    assert Laurent.make(4, ()) == Laurent(0, ())
    assert f.to_poly.__name__ == "to_poly"
    with pytest.raises(ValueError):
        f.to_poly()
    assert Laurent.make(1, (2, 1)).to_poly() == (0, 2, 1)


@pytest.mark.parametrize("f, cls", [
    ((1,), Palindromic(0)),
    ((-1, 1), SkewPalindromic(1)),
    (DIAG, Palindromic(6)),
    ((1, 2), Neither()),
    ((0, 0, 2, 0, 2), Palindromic(6)),
])
def test_palindromic_class(f, cls):
    assert P.palindromic_class(f) == cls


def test_palindromic_class_of_zero_rejected():
    with pytest.raises(ValueError):
        P.palindromic_class(())


@given(nonzero_polys)
def test_palindromic_divisibility(f):
    g = P.mul(f, tuple(reversed(f)))  # always palindromic
    c = P.palindromic_class(g)
    assert isinstance(c, Palindromic)
    if c.k % 2:
        assert P.evaluate(g, -1) == 0
    h = P.mul(g, (-1, 1))
    s = P.palindromic_class(h)
    assert isinstance(s, SkewPalindromic)
    assert P.evaluate(h, 1) == 0


@given(polys)
def test_text_roundtrip(f):
    assert P.parse_poly(P.format_poly(f)) == f


@given(laurents)
def test_laurent_text_roundtrip(f):
    assert P.parse_laurent(P.format_laurent(f)) == f


def test_format_examples():
    assert P.format_poly(F13) == "1,4,8,11,12,12,12,12,12,12,11,8,4,1"
    assert P.format_poly(()) == "0"
    assert P.format_poly((Fraction(1, 2), -3)) == "1/2,-3"
    assert P.parse_laurent("-2:1,0,1") == Laurent(-2, (1, 0, 1))
