"""Univariate polynomial algorithms over the fraction field of the other variables.

A UniPoly is a dense polynomial in one distinguished variable whose
coefficients are RatFunc values free of that variable.  This is the machinery
behind Hermite reduction and the Rothstein-Trager logarithmic part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ArityMismatch, LvkError, ZeroDivisionInField
from .linalg import determinant
from .multipoly import MultiPoly
from .ratfunc import RatFunc


class UniPoly:
    """coeffs[i] is the coefficient of mainVar**i; the top one is nonzero."""

    __slots__ = ("main_var", "arity", "coeffs")

    def __init__(self, main_var: int, arity: int, coeffs: list[RatFunc]):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        for c in coeffs:
            if c.arity != arity:
                raise ArityMismatch("coefficient arity mismatch")
            if c.involves(main_var):
                raise ArityMismatch("coefficient involves the main variable")
        self.main_var = main_var
        self.arity = arity
        self.coeffs = coeffs

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(main_var: int, arity: int) -> "UniPoly":
        return UniPoly(main_var, arity, [])

    @staticmethod
    def const(main_var: int, arity: int, c: RatFunc) -> "UniPoly":
        return UniPoly(main_var, arity, [c])

    @staticmethod
    def of_poly(p: MultiPoly, main_var: int) -> "UniPoly":
        by_deg: dict[int, dict] = {}
        for e, c in p.terms.items():
            rest = list(e)
            d = rest[main_var]
            rest[main_var] = 0
            by_deg.setdefault(d, {})[tuple(rest)] = c
        deg = max(by_deg) if by_deg else -1
        coeffs = [
            RatFunc(MultiPoly(p.arity, by_deg.get(i, {}))) for i in range(deg + 1)
        ]
        return UniPoly(main_var, p.arity, coeffs)

    # -- queries -----------------------------------------------------------

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionInField("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> RatFunc:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RatFunc.zero(self.arity)

    def is_monic(self) -> bool:
        return not self.is_zero() and self.lc() == RatFunc.one(self.arity)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "UniPoly"):
        if self.main_var != other.main_var or self.arity != other.arity:
            raise ArityMismatch("UniPoly main variable or arity mismatch")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            self.main_var,
            self.arity,
            [self.coeff(i) + other.coeff(i) for i in range(n)],
        )

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.main_var, self.arity, [-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.main_var, self.arity)
        out = [RatFunc.zero(self.arity)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.main_var, self.arity, out)

    def scale(self, c: RatFunc) -> "UniPoly":
        return UniPoly(self.main_var, self.arity, [x * c for x in self.coeffs])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.lc().inverse())

    def shift(self, k: int) -> "UniPoly":
        return UniPoly(
            self.main_var, self.arity, [RatFunc.zero(self.arity)] * k + self.coeffs
        )

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionInField("division by zero UniPoly")
        q = UniPoly.zero(self.main_var, self.arity)
        r = self
        inv_lc = other.lc().inverse()
        while not r.is_zero() and r.degree() >= other.degree():
            k = r.degree() - other.degree()
            c = r.lc() * inv_lc
            term = UniPoly.const(self.main_var, self.arity, c).shift(k)
            q = q + term
            r = r - term * other
        return q, r

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(
            self.main_var,
            self.arity,
            [
                self.coeffs[i].scale(i)
                for i in range(1, len(self.coeffs))
            ],
        )

    def integrate(self) -> "UniPoly":
        """Antiderivative in the main variable with constant 0."""
        out = [RatFunc.zero(self.arity)]
        for i, c in enumerate(self.coeffs):
            out.append(c.scale(Fraction(1, i + 1)))
        return UniPoly(self.main_var, self.arity, out)

    def to_ratfunc(self) -> RatFunc:
        x = RatFunc(MultiPoly.variable(self.arity, self.main_var))
        acc = RatFunc.zero(self.arity)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_at(self, value: RatFunc) -> RatFunc:
        acc = RatFunc.zero(self.arity)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniPoly)
            and self.main_var == other.main_var
            and self.arity == other.arity
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"UniPoly(var={self.main_var}, {[c.render() for c in self.coeffs]})"


def ratfunc_as_unipair(f: RatFunc, main_var: int) -> tuple[UniPoly, UniPoly]:
    """Split a rational function into (numerator, denominator) UniPolys."""
    return UniPoly.of_poly(f.num, main_var), UniPoly.of_poly(f.den, main_var)


def gcd_uni(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm over the coefficient field."""
    if a.is_zero() and b.is_zero():
        raise ZeroDivisionInField("gcd(0, 0) undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def extended_gcd_uni(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """(g, s, t) with s*a + t*b = g, g monic."""
    mv, ar = a.main_var, a.arity
    one = UniPoly.const(mv, ar, RatFunc.one(ar))
    zero = UniPoly.zero(mv, ar)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        raise ZeroDivisionInField("extended gcd of two zero polynomials")
    inv = r0.lc().inverse()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


@dataclass
class SquarefreeDecomposition:
    """input = unit * prod(factor ** multiplicity), factors monic squarefree."""

    parts: list[tuple[UniPoly, int]]
    unit: RatFunc

    def multiply_back(self) -> UniPoly:
        sample = None
        for f, _ in self.parts:
            sample = f
            break
        if sample is None:
            raise ValueError("empty decomposition has no intrinsic variable")
        acc = UniPoly.const(sample.main_var, sample.arity, self.unit)
        for f, m in self.parts:
            for _ in range(m):
                acc = acc * f
        return acc


def squarefree_yun(p: UniPoly) -> SquarefreeDecomposition:
    """Yun's squarefree decomposition in characteristic zero."""
    if p.is_zero():
        raise ZeroDivisionInField("squarefree decomposition of zero")
    unit = p.lc()
    p = p.monic()
    if p.degree() == 0:
        return SquarefreeDecomposition(parts=[], unit=unit)
    dp = p.derivative()
    g = gcd_uni(p, dp)
    parts: list[tuple[UniPoly, int]] = []
    if g.degree() == 0:
        return SquarefreeDecomposition(parts=[(p, 1)], unit=unit)
    w = p.divmod(g)[0]
    y = dp.divmod(g)[0]
    z = y - w.derivative()
    i = 1
    while not w.is_zero() and w.degree() > 0:
        f = gcd_uni(w, z)
        if f.degree() > 0:
            parts.append((f, i))
        w = w.divmod(f)[0]
        z = z.divmod(f)[0] - w.derivative()
        i += 1
    return SquarefreeDecomposition(parts=parts, unit=unit)


def resultant(p: UniPoly, q: UniPoly) -> RatFunc:
    """Resultant as the Sylvester determinant, p's coefficients in the top rows.

    Sign convention frozen: rows 0..deg(q)-1 carry p's coefficients (highest
    first), the remaining deg(p) rows carry q's.
    """
    if p.is_zero() or q.is_zero():
        raise ZeroDivisionInField("resultant of zero polynomial")
    p._check(q)
    dp, dq = p.degree(), q.degree()
    if dp == 0 and dq == 0:
        return RatFunc.one(p.arity)
    n = dp + dq
    zero = RatFunc.zero(p.arity)
    rows = []
    pc = [p.coeff(dp - i) for i in range(dp + 1)]  # highest first
    qc = [q.coeff(dq - i) for i in range(dq + 1)]
    for i in range(dq):
        rows.append([zero] * i + pc + [zero] * (n - dp - 1 - i))
    for i in range(dp):
        rows.append([zero] * i + qc + [zero] * (n - dq - 1 - i))
    return determinant(rows)


class HermiteError(LvkError):
    pass


def _split_partial_fraction(num: UniPoly, e: UniPoly, f: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Split num/(e*f) = a/e + b/f for coprime e, f with proper degrees."""
    g, s, t = extended_gcd_uni(e, f)
    if g.degree() != 0:
        raise HermiteError("denominator factors not coprime")
    # num = num*(s*e + t*f); num/(e*f) = num*t/e + num*s/f, reduced mod
    a = (num * t) % e
    b = (num * s) % f
    # polynomial discrepancy must vanish for a proper fraction
    return a, b


def hermite_reduce(num: UniPoly, den: UniPoly) -> tuple[RatFunc, UniPoly, UniPoly]:
    """Write num/den = d/dx(ratPart) + reducedNum/reducedDen.

    reducedDen is squarefree and the remainder fraction is proper.  Requires
    gcd(num, den) a unit and the input fraction proper (callers split off the
    polynomial part first).
    """
    if den.is_zero():
        raise ZeroDivisionInField("zero denominator")
    mv, ar = den.main_var, den.arity
    if num.is_zero():
        return RatFunc.zero(ar), UniPoly.zero(mv, ar), UniPoly.const(mv, ar, RatFunc.one(ar))
    unit_adjust = den.lc()
    den = den.monic()
    num = num.scale(unit_adjust.inverse())
    decomp = squarefree_yun(den)
    # peel off one part at a time: den = part^mult * rest
    rat_part = RatFunc.zero(ar)
    res_num = UniPoly.zero(mv, ar)
    res_den = UniPoly.const(mv, ar, RatFunc.one(ar))
    pieces: list[tuple[UniPoly, int, UniPoly]] = []  # (factor, mult, local numerator)
    remaining = num
    rest = den
    for factor, mult in decomp.parts:
        power = factor
        for _ in range(mult - 1):
            power = power * factor
        rest = rest.divmod(power)[0]
        if rest.degree() == 0:
            local = remaining
        else:
            local, remaining = _split_partial_fraction(remaining, power, rest)
        pieces.append((factor, mult, local))
    for factor, mult, local in pieces:
        dfactor = factor.derivative()
        # local / factor^mult, reduce multiplicity down to 1
        a = local
        j = mult
        while j > 1:
            # write a = s*factor + t*dfactor, then integrate t*dfactor/factor^j by parts
            g, s0, t0 = extended_gcd_uni(factor, dfactor)
            if g.degree() != 0:
                raise HermiteError("squarefree factor shares a root with its derivative")
            t = (t0 * a) % factor
            s = (a - t * dfactor).divmod(factor)[0]
            denom_pow = factor
            for _ in range(j - 2):
                denom_pow = denom_pow * factor
            rat_part = rat_part + (
                (t.scale(RatFunc.constant(ar, Fraction(-1, j - 1)))).to_ratfunc()
                / denom_pow.to_ratfunc()
            )
            a = s + t.derivative().scale(RatFunc.constant(ar, Fraction(1, j - 1)))
            j -= 1
        a = a % factor
        if not a.is_zero():
            # accumulate a/factor into res_num/res_den over a common denominator
            res_num = res_num * factor + a * res_den
            res_den = res_den * factor
    if not res_num.is_zero():
        g = gcd_uni(res_num, res_den)
        if g.degree() > 0:
            res_num = res_num.divmod(g)[0]
            res_den = res_den.divmod(g)[0]
    return rat_part, res_num, res_den
