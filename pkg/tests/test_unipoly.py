import random
from fractions import Fraction

import pytest

from lvk.multipoly import MultiPoly
from lvk.parsing import parse_poly, parse_ratfunc
from lvk.ratfunc import RatFunc
from lvk.unipoly import (
    UniPoly,
    extended_gcd_uni,
    gcd_uni,
    hermite_reduce,
    ratfunc_as_unipair,
    resultant,
    squarefree_yun,
)

from conftest import random_poly

F = Fraction


def U(expr, names=("x", "y"), main_var=0):
    return UniPoly.of_poly(parse_poly(expr, list(names)), main_var)


def test_coefficients_must_avoid_main_var():
    with pytest.raises(Exception):
        UniPoly(0, 2, [parse_ratfunc("x", ["x", "y"])])


def test_divmod_inverts_multiplication():
    a = U("x^3 + y*x + 1")
    b = U("x + y")
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree() < b.degree()


def test_gcd_uni_monic():
    a = U("x^2 - 1") * U("x + 2")
    b = U("x^2 + 3*x + 2")  # (x+1)(x+2)
    g = gcd_uni(a, b)
    assert g == U("x^2 + 3*x + 2")
    assert g.is_monic()


def test_extended_gcd_bezout():
    a = U("x^2 + y")
    b = U("x + 1")
    g, s, t = extended_gcd_uni(a, b)
    assert s * a + t * b == g
    assert g.is_monic()


def test_squarefree_yun():
    p = U("x + 1") * U("x + 1") * U("x - y")
    d = squarefree_yun(p)
    assert d.multiply_back() == p
    mults = sorted(m for _, m in d.parts)
    assert mults == [1, 2]
    for f, _ in d.parts:
        assert gcd_uni(f, f.derivative()).degree() == 0


def test_resultant_sign_convention():
    names = ["x"]
    x2 = UniPoly.of_poly(parse_poly("x^2 - 2", names), 0)
    lin = UniPoly.of_poly(parse_poly("x - 3", names), 0)
    # res(p, q) with p's coefficients in the top rows: res(x^2-2, x-3) = 7
    assert resultant(x2, lin) == RatFunc.constant(1, 7)
    a = UniPoly.of_poly(parse_poly("x - 1", names), 0)
    b = UniPoly.of_poly(parse_poly("x - 4", names), 0)
    # res(x - a, x - b) = a - b under the frozen convention
    assert resultant(a, b) == RatFunc.constant(1, -3)


def test_resultant_detects_common_root():
    common = U("x - y")
    assert resultant(common * U("x + 1"), common * U("x + 2")).is_zero()


def test_hermite_worked_example():
    # (x^2 + 1)/x^3 = d/dx(-1/(2 x^2)) + 1/x
    names = ["x"]
    num = UniPoly.of_poly(parse_poly("x^2 + 1", names), 0)
    den = UniPoly.of_poly(parse_poly("x^3", names), 0)
    rat, rnum, rden = hermite_reduce(num, den)
    assert rat == parse_ratfunc("-1/(2*x^2)", names)
    assert rnum.to_ratfunc() / rden.to_ratfunc() == parse_ratfunc("1/x", names)
    sf = squarefree_yun(rden)
    assert all(m == 1 for _, m in sf.parts)


def test_hermite_roundtrip_random():
    rng = random.Random(11)
    names = ["x", "y"]
    checked = 0
    while checked < 200:
        arity = 2
        den_factor = random_poly(rng, arity, max_deg=2, nonzero=True)
        if not den_factor.involves(0):
            continue
        mult = rng.randint(1, 3)
        den_poly = den_factor**mult
        num_poly = random_poly(rng, arity, max_deg=2)
        num = UniPoly.of_poly(num_poly, 0)
        den = UniPoly.of_poly(den_poly, 0)
        if num.is_zero() or num.degree() >= den.degree():
            continue
        g = gcd_uni(num, den)
        if g.degree() > 0:
            continue
        rat, rnum, rden = hermite_reduce(num, den)
        # d/dx(rat) + rnum/rden == num/den exactly
        back = rat.derivative(0) + rnum.to_ratfunc() / rden.to_ratfunc()
        want = RatFunc(num_poly, den_poly)
        assert back == want
        checked += 1


def test_ratfunc_as_unipair():
    f = parse_ratfunc("(x + y)/(x*y)", ["x", "y"])
    num, den = ratfunc_as_unipair(f, 0)
    assert num.to_ratfunc() / den.to_ratfunc() == f
