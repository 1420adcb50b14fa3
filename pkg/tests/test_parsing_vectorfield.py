from fractions import Fraction

import pytest

from lvk.errors import ParseError
from lvk.parsing import parse_darboux, parse_poly, parse_ratfunc
from lvk.vectorfield import PolyVectorField, parse_system

NAMES = ["x", "y"]


# -- expression grammar ----------------------------------------------------------


def test_poly_precedence_and_powers():
    assert parse_poly("2*x + 3*y^2 - 1", NAMES).render(NAMES) == "3*y^2 + 2*x - 1"
    assert parse_poly("-x^2", NAMES) == -parse_poly("x^2", NAMES)
    assert parse_poly("(x + y)^2", NAMES) == parse_poly("x^2 + 2*x*y + y^2", NAMES)


def test_bare_exponent_binds_tighter_than_division():
    # x^2/y is (x^2)/y, not x^(2/y)
    f = parse_ratfunc("x^2/y", NAMES)
    assert f == parse_ratfunc("(x^2)/y", NAMES)


def test_rational_exponent_needs_parentheses():
    d = parse_darboux("x^(1/2)", NAMES)
    assert d.factors[0][1] == Fraction(1, 2)
    assert not d.is_rational()


def test_decimal_literals_become_exact():
    assert parse_poly("0.5*x", NAMES) == parse_poly("x/2", NAMES)


def test_poly_rejects_nonconstant_division():
    with pytest.raises(ParseError):
        parse_poly("x/y", NAMES)
    with pytest.raises(ParseError):
        parse_poly("x/0", NAMES)


def test_unknown_variable_reports_position():
    with pytest.raises(ParseError) as e:
        parse_poly("x + q", NAMES)
    assert "q" in str(e.value)


def test_darboux_exp_and_products():
    d = parse_darboux("exp(y/x) * x^2", NAMES)
    assert not d.is_rational()
    assert d.exp_arg == parse_ratfunc("y/x", NAMES)
    r = parse_darboux("x^2 * y^-1", NAMES)
    assert r.is_rational()
    assert r.to_ratfunc() == parse_ratfunc("x^2/y", NAMES)


def test_darboux_rejects_sums_of_transcendentals():
    with pytest.raises(ParseError):
        parse_darboux("exp(x) + y", NAMES)


# -- vector fields ------------------------------------------------------------------


SYS = """# comment line
vars x, y
dx = x - x*y
dy = x*y - y
"""


def test_parse_system_roundtrip():
    X = parse_system(SYS)
    assert X.var_names == ("x", "y")
    assert X.degree == 2
    again = parse_system(X.render())
    assert again.components == X.components


def test_system_errors():
    with pytest.raises(ParseError):
        parse_system("dx = x\n")  # no vars line
    with pytest.raises(ParseError):
        parse_system("vars x, x\ndx = x\n")  # duplicate name
    with pytest.raises(ParseError):
        parse_system("vars x, y\ndx = x\n")  # missing equation
    with pytest.raises(ParseError):
        parse_system("vars x, y\ndx = x\ndy = y\ndy = x\n")  # duplicate equation
    with pytest.raises(ParseError):
        parse_system("vars x, y\ndx = x\ndz = y\n")  # unknown variable


def test_divergence_and_lie_derivative():
    X = parse_system(SYS)
    # div = (1 - y) + (x - 1) = x - y
    assert X.divergence() == parse_poly("x - y", NAMES)
    # lie derivative of an invariant polynomial is a multiple of it
    f = parse_poly("x", NAMES)
    assert X.lie_derivative(f) == parse_poly("x - x*y", NAMES)


def test_permuted_variables():
    X = parse_system("vars x, y\ndx = y\ndy = -x\n")
    Y = X.permuted([1, 0])
    assert Y.var_names == ("y", "x")
    assert Y.render() == "vars y, x\ndy = -x\ndx = y\n"
