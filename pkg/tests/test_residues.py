from fractions import Fraction

import pytest

from lvk.errors import NonConstantResidue
from lvk.parsing import parse_poly, parse_ratfunc
from lvk.ratfunc import RatFunc
from lvk.residues import (
    ResidueGroup,
    power_sums,
    qpoly_render,
    rothstein_trager,
    trace_of_algebraic,
)
from lvk.unipoly import UniPoly

F = Fraction


def _unipair(expr_num, expr_den, names, main_var=0):
    num = UniPoly.of_poly(parse_poly(expr_num, names), main_var)
    den = UniPoly.of_poly(parse_poly(expr_den, names), main_var)
    return num, den


# -- rational helpers ------------------------------------------------------------


def test_qpoly_render_clears_denominators():
    assert qpoly_render([F(-1, 8), F(0), F(1)]) == "8*t^2 - 1"
    assert qpoly_render([F(-1), F(1)]) == "t - 1"
    assert qpoly_render([]) == "0"


def test_power_sums_of_known_roots():
    # roots 1 and 2: m = (t-1)(t-2) = t^2 - 3t + 2
    sums = power_sums([F(2), F(-3), F(1)], 4)
    assert sums == [F(2), F(3), F(5), F(9)]


def test_trace_reduces_argument_first():
    # sum of t^2 over roots of t^2 - 1/8: 1/8 + 1/8 = 1/4
    assert trace_of_algebraic([F(0), F(0), F(1)], [F(-1, 8), F(0), F(1)]) == F(1, 4)
    # sum of t over the same roots is 0
    assert trace_of_algebraic([F(0), F(1)], [F(-1, 8), F(0), F(1)]) == 0


# -- residue groups ---------------------------------------------------------------


def test_degree_one_group_is_scaled_log():
    names = ["x", "y"]
    # 3*log(x*y): minpoly t - 3, argument x*y
    g = ResidueGroup(minpoly=(F(-3), F(1)), arg=(parse_ratfunc("x*y", names),))
    assert g.residue_value() == 3
    assert g.log_derivative(0) == parse_ratfunc("3/x", names)
    assert g.log_derivative(1) == parse_ratfunc("3/y", names)
    assert g.render(names) == "3*log(x*y)"


def test_algebraic_group_trace_derivative():
    names = ["x"]
    # sum over t^2 = 1/8 of t*log(x - 4t); derivative must be 1/(x^2 - 2)
    g = ResidueGroup(
        minpoly=(F(-1, 8), F(0), F(1)),
        arg=(parse_ratfunc("x", names), RatFunc.constant(1, -4)),
    )
    assert g.log_derivative(0) == parse_ratfunc("1/(x^2 - 2)", names)


# -- Rothstein-Trager ---------------------------------------------------------------


def test_rt_simple_log():
    num, den = _unipair("1", "x", ["x"])
    groups = rothstein_trager(num, den)
    assert len(groups) == 1
    g = groups[0]
    assert g.degree == 1 and g.residue_value() == 1
    assert g.arg_at_rational(F(1)) == parse_ratfunc("x", ["x"])


def test_rt_two_rational_residues():
    # (3x - 1)/(x^2 - x) = 1/x + 2/(x - 1)
    num, den = _unipair("3*x - 1", "x^2 - x", ["x"])
    groups = rothstein_trager(num, den)
    got = sorted(
        (g.residue_value(), g.arg_at_rational(g.residue_value()).render(["x"]))
        for g in groups
    )
    assert got == [(F(1), "x"), (F(2), "x - 1")]


def test_rt_algebraic_residues_golden():
    num, den = _unipair("1", "x^2 - 2", ["x"])
    groups = rothstein_trager(num, den)
    assert len(groups) == 1
    g = groups[0]
    assert qpoly_render(list(g.minpoly)) == "8*t^2 - 1"
    assert [c.render(["x"]) for c in g.arg] == ["x", "-4"]
    # the trace-sum derivative reproduces the input exactly
    assert g.log_derivative(0) == parse_ratfunc("1/(x^2 - 2)", ["x"])


def test_rt_parameterized_coefficients():
    # 1/(x + y) in x: single log with residue 1 and argument x + y
    num, den = _unipair("1", "x + y", ["x", "y"])
    groups = rothstein_trager(num, den)
    assert len(groups) == 1
    g = groups[0]
    assert g.residue_value() == 1
    assert g.arg_at_rational(F(1)) == parse_ratfunc("x + y", ["x", "y"])


def test_rt_rejects_non_constant_residue():
    # y/x has residue y: not a constant, must abort rather than guess
    num, den = _unipair("y", "x", ["x", "y"])
    with pytest.raises(NonConstantResidue):
        rothstein_trager(num, den)


def test_rt_mixed_rational_and_algebraic():
    # 1/x + 1/(x^2 - 2) forces one split residue 1 and one conjugate pair
    names = ["x"]
    f = parse_ratfunc("1/x", names) + parse_ratfunc("1/(x^2 - 2)", names)
    num = UniPoly.of_poly(f.num, 0)
    den = UniPoly.of_poly(f.den, 0)
    groups = rothstein_trager(num, den)
    total = RatFunc.zero(1)
    for g in groups:
        total = total + g.log_derivative(0)
    assert total == f
    degrees = sorted(g.degree for g in groups)
    assert degrees == [1, 2]
