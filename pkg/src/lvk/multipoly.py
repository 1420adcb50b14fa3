"""Sparse multivariate polynomials over exact rationals.

Terms are stored as a map from exponent tuples to nonzero ``Fraction``
coefficients.  The monomial order used everywhere (normalization, leading
terms, printing) is graded lexicographic with the declared variable order.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    ArityMismatch,
    DegreeCapExceeded,
    NotDivisibleError,
    ZeroDivisionInField,
)

#: Degree of the zero polynomial: strictly less than every integer.
MINUS_INFINITY = float("-inf")


def degree_cap() -> int:
    """Safety rail on intermediate total degrees (env LVK_MAX_DEGREE)."""
    try:
        return int(os.environ.get("LVK_MAX_DEGREE", "64"))
    except ValueError:
        return 64


def _grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class MultiPoly:
    """Immutable sparse polynomial in a fixed number of variables."""

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        cap = degree_cap()
        if terms:
            for exps, coeff in terms.items():
                c = Fraction(coeff)
                if c == 0:
                    continue
                if len(exps) != arity:
                    raise ArityMismatch(
                        f"exponent vector {exps} has length {len(exps)}, expected {arity}"
                    )
                if sum(exps) > cap:
                    raise DegreeCapExceeded(
                        f"term of total degree {sum(exps)} exceeds LVK_MAX_DEGREE={cap}"
                    )
                clean[tuple(exps)] = c
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(arity: int) -> "MultiPoly":
        return MultiPoly(arity, {})

    @staticmethod
    def constant(arity: int, value) -> "MultiPoly":
        return MultiPoly(arity, {(0,) * arity: Fraction(value)})

    @staticmethod
    def one(arity: int) -> "MultiPoly":
        return MultiPoly.constant(arity, 1)

    @staticmethod
    def variable(arity: int, index: int) -> "MultiPoly":
        if not 0 <= index < arity:
            raise ArityMismatch(f"variable index {index} out of range for arity {arity}")
        exps = [0] * arity
        exps[index] = 1
        return MultiPoly(arity, {tuple(exps): Fraction(1)})

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.arity, Fraction(0))

    def total_degree(self):
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: int):
        if not self.terms:
            return MINUS_INFINITY
        return max(e[var] for e in self.terms)

    def involves(self, var: int) -> bool:
        return any(e[var] > 0 for e in self.terms)

    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise ZeroDivisionInField("zero polynomial has no leading monomial")
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly(self.arity, terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return MultiPoly(self.arity, terms)

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return MultiPoly.zero(self.arity)
        return MultiPoly(self.arity, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.one(self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n > 1
            if base_needed:
                base = base * base
            n >>= 1
        return result

    def derivative(self, var: int) -> "MultiPoly":
        if not 0 <= var < self.arity:
            raise ArityMismatch(f"variable index {var} out of range")
        terms: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if e[var] == 0:
                continue
            new = list(e)
            new[var] -= 1
            terms[tuple(new)] = c * e[var]
        return MultiPoly(self.arity, terms)

    def eval_partial(self, assignments: Mapping[int, Fraction]) -> "MultiPoly":
        """Substitute rational values for some variables (others untouched)."""
        terms: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            value = c
            new = list(e)
            for var, val in assignments.items():
                value *= Fraction(val) ** e[var]
                new[var] = 0
            if value == 0:
                continue
            key = tuple(new)
            s = terms.get(key, Fraction(0)) + value
            if s == 0:
                terms.pop(key, None)
            else:
                terms[key] = s
        return MultiPoly(self.arity, terms)

    def extend_arity(self, new_arity: int) -> "MultiPoly":
        """Reinterpret in a larger variable set (new variables appended)."""
        if new_arity < self.arity:
            raise ArityMismatch("cannot shrink arity")
        pad = (0,) * (new_arity - self.arity)
        return MultiPoly(new_arity, {e + pad: c for e, c in self.terms.items()})

    def drop_last_var(self) -> "MultiPoly":
        """Inverse of extend_arity by one; last variable must not occur."""
        if self.involves(self.arity - 1):
            raise ArityMismatch("last variable occurs; cannot drop")
        return MultiPoly(self.arity - 1, {e[:-1]: c for e, c in self.terms.items()})

    # -- equality / hashing / printing ---------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.arity, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def render(self, names: list[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i+1}" for i in range(self.arity)]
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if p == 1 else f"{n}^{p}" for n, p in zip(names, e) if p > 0
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"MultiPoly({self.render()})"


# -- division and gcd ------------------------------------------------------


def try_exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly | None:
    """Quotient a/b when b divides a exactly, else None.

    Greedy leading-term division in graded-lex order: when b | a the leading
    term of every partial remainder is divisible by the leading term of b, so
    a failed monomial division certifies non-divisibility.
    """
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionInField("division by zero polynomial")
    if a.is_zero():
        return MultiPoly.zero(a.arity)
    lm_b = b.leading_monomial()
    lc_b = b.terms[lm_b]
    quotient: dict[tuple[int, ...], Fraction] = {}
    rem = a
    while not rem.is_zero():
        lm_r = rem.leading_monomial()
        exps = tuple(r - s for r, s in zip(lm_r, lm_b))
        if any(e < 0 for e in exps):
            return None
        c = rem.terms[lm_r] / lc_b
        quotient[exps] = c
        rem = rem - MultiPoly(a.arity, {exps: c}) * b
    return MultiPoly(a.arity, quotient)


def exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    q = try_exact_div(a, b)
    if q is None:
        raise NotDivisibleError(f"{b.render()} does not divide {a.render()}")
    return q


def monic_grlex(p: MultiPoly) -> MultiPoly:
    """Scale so the graded-lex leading coefficient is 1."""
    if p.is_zero():
        return p
    return p.scale(1 / p.leading_coefficient())


def _coeffs_in_var(p: MultiPoly, var: int) -> dict[int, MultiPoly]:
    """View p as univariate in var with MultiPoly coefficients."""
    out: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for e, c in p.terms.items():
        d = e[var]
        rest = list(e)
        rest[var] = 0
        out.setdefault(d, {})[tuple(rest)] = c
    return {d: MultiPoly(p.arity, t) for d, t in out.items()}


def _from_coeffs_in_var(coeffs: dict[int, MultiPoly], var: int, arity: int) -> MultiPoly:
    terms: dict[tuple[int, ...], Fraction] = {}
    for d, poly in coeffs.items():
        for e, c in poly.terms.items():
            new = list(e)
            new[var] += d
            terms[tuple(new)] = c
    return MultiPoly(arity, terms)


class _UniView:
    """Dense univariate view of a MultiPoly in one variable, coefficients MultiPoly."""

    def __init__(self, coeffs: list[MultiPoly], var: int, arity: int):
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = coeffs
        self.var = var
        self.arity = arity

    @staticmethod
    def of(p: MultiPoly, var: int) -> "_UniView":
        by_deg = _coeffs_in_var(p, var)
        deg = max(by_deg) if by_deg else -1
        coeffs = [by_deg.get(i, MultiPoly.zero(p.arity)) for i in range(deg + 1)]
        return _UniView(coeffs, var, p.arity)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self) -> MultiPoly:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_poly(self) -> MultiPoly:
        return _from_coeffs_in_var(dict(enumerate(self.coeffs)), self.var, self.arity)

    def mul_coeff(self, c: MultiPoly) -> "_UniView":
        return _UniView([x * c for x in self.coeffs], self.var, self.arity)

    def div_coeff(self, c: MultiPoly) -> "_UniView":
        return _UniView([exact_div(x, c) for x in self.coeffs], self.var, self.arity)

    def sub(self, other: "_UniView") -> "_UniView":
        n = max(len(self.coeffs), len(other.coeffs))
        z = MultiPoly.zero(self.arity)
        coeffs = [
            (self.coeffs[i] if i < len(self.coeffs) else z)
            - (other.coeffs[i] if i < len(other.coeffs) else z)
            for i in range(n)
        ]
        return _UniView(coeffs, self.var, self.arity)

    def shift(self, k: int) -> "_UniView":
        z = MultiPoly.zero(self.arity)
        return _UniView([z] * k + list(self.coeffs), self.var, self.arity)


def _pseudo_rem(a: _UniView, b: _UniView) -> _UniView:
    """Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b."""
    d = a.degree() - b.degree()
    lc_b = b.lc()
    rem = a
    while not rem.is_zero() and rem.degree() >= b.degree():
        k = rem.degree() - b.degree()
        lead = rem.lc()
        rem = rem.mul_coeff(lc_b).sub(b.mul_coeff(lead).shift(k))
        # each step multiplies by lc_b once; pad remaining factor at the end
        d -= 1
    for _ in range(d + 1):
        rem = rem.mul_coeff(lc_b)
    return rem


def _content(coeffs: Iterable[MultiPoly]) -> MultiPoly:
    g = None
    for c in coeffs:
        if c.is_zero():
            continue
        g = c if g is None else gcd_multivar(g, c)
        if g.is_constant():
            break
    if g is None:
        raise ZeroDivisionInField("content of zero polynomial")
    return monic_grlex(g)


def gcd_multivar(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized with graded-lex leading coefficient 1.

    Recursive content/primitive-part reduction with a subresultant polynomial
    remainder sequence in the top occurring variable.
    """
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise ZeroDivisionInField("gcd(0, 0) undefined")
    if a.is_zero():
        return monic_grlex(b)
    if b.is_zero():
        return monic_grlex(a)
    if a.is_constant() or b.is_constant():
        return MultiPoly.one(a.arity)
    if a == b:
        return monic_grlex(a)
    var = next(
        v for v in range(a.arity) if a.involves(v) or b.involves(v)
    )
    if not (a.involves(var) and b.involves(var)):
        # one of them is free of the chosen top variable: gcd divides the
        # content of the other in that variable
        free, bound = (a, b) if not a.involves(var) else (b, a)
        cont = _content(_UniView.of(bound, var).coeffs)
        return gcd_multivar(free, cont)
    ua, ub = _UniView.of(a, var), _UniView.of(b, var)
    cont_a, cont_b = _content(ua.coeffs), _content(ub.coeffs)
    pa = ua.div_coeff(cont_a)
    pb = ub.div_coeff(cont_b)
    cg = gcd_multivar(cont_a, cont_b)
    if pa.degree() < pb.degree():
        pa, pb = pb, pa
    one = MultiPoly.one(a.arity)
    g, h = one, one
    while True:
        delta = pa.degree() - pb.degree()
        rem = _pseudo_rem(pa, pb)
        if rem.is_zero():
            break
        if rem.degree() == 0:
            pb = _UniView([one], var, a.arity)
            break
        divisor = g * (h**delta)
        pa, pb = pb, rem.div_coeff(divisor)
        g = pa.lc()
        if delta == 0:
            pass  # h unchanged
        elif delta == 1:
            h = g
        else:
            h = exact_div(g**delta, h ** (delta - 1))
    if pb.degree() == 0:
        result = cg
    else:
        prim = pb.div_coeff(_content(pb.coeffs)).to_poly()
        result = cg * prim
    return monic_grlex(result)


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Dispatch form of the ring operations; kept for the report layer."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")
