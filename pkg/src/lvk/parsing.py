"""Tokenizer and recursive-descent parser for the expression grammar.

One grammar serves three uses: polynomial right-hand sides of systems,
rational expressions (1-form components, first integrals), and Darboux
function expressions with exp(...) and rational exponents via ^(p/q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .darboux import DarbouxFunction
from .errors import ParseError, ZeroDivisionInField
from .multipoly import MultiPoly
from .ratfunc import RatFunc


@dataclass
class Token:
    kind: str  # 'num', 'ident', 'op', 'end'
    text: str
    line: int
    column: int


_OPS = set("+-*/^(),=")


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            tokens.append(Token("newline", "\n", line, col))
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            start = i
            scol = col
            seen_dot = False
            while i < n and (text[i].isdigit() or (text[i] == "." and not seen_dot)):
                if text[i] == ".":
                    seen_dot = True
                i += 1
                col += 1
            tokens.append(Token("num", text[start:i], line, scol))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            scol = col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            tokens.append(Token("ident", text[start:i], line, scol))
            continue
        if ch in _OPS:
            tokens.append(Token("op", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("end", "", line, col))
    return tokens


class _Parser:
    """expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
    factor := ('-')* atom ('^' exponent)?; atom := num | ident | '(' expr ')'
    | 'exp' '(' expr ')'."""

    def __init__(self, tokens, algebra):
        self.tokens = [t for t in tokens if t.kind != "newline"]
        self.pos = 0
        self.alg = algebra

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect_op(self, text: str):
        t = self.take()
        if t.kind != "op" or t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text!r}", t.line, t.column)

    def parse(self):
        value = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected trailing input {t.text!r}", t.line, t.column)
        return value

    def expr(self):
        t = self.peek()
        negate = False
        value = None
        if t.kind == "op" and t.text in "+-":
            self.take()
            negate = t.text == "-"
        value = self.term()
        if negate:
            value = self.alg.neg(value)
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in "+-":
                self.take()
                rhs = self.term()
                value = self.alg.add(value, rhs) if t.text == "+" else self.alg.sub(value, rhs)
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in "*/":
                self.take()
                rhs = self.factor()
                if t.text == "*":
                    value = self.alg.mul(value, rhs)
                else:
                    value = self.alg.div(value, rhs, t)
            else:
                return value

    def factor(self):
        t = self.peek()
        if t.kind == "op" and t.text == "-":
            self.take()
            return self.alg.neg(self.factor())
        value = self.atom()
        t = self.peek()
        if t.kind == "op" and t.text == "^":
            self.take()
            e = self.exponent()
            value = self.alg.pow(value, e, t)
        return value

    def exponent(self) -> Fraction:
        t = self.peek()
        if t.kind == "op" and t.text == "(":
            self.take()
            e = self.signed_rational(allow_fraction=True)
            self.expect_op(")")
            return e
        # a bare exponent is an integer; x^2/y means (x^2)/y
        return self.signed_rational(allow_fraction=False)

    def signed_rational(self, allow_fraction: bool) -> Fraction:
        sign = 1
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            sign = -1 if t.text == "-" else 1
        t = self.take()
        if t.kind != "num":
            raise ParseError("exponent must be a rational literal", t.line, t.column)
        value = Fraction(t.text)
        if allow_fraction:
            t2 = self.peek()
            if t2.kind == "op" and t2.text == "/":
                self.take()
                t3 = self.take()
                if t3.kind != "num":
                    raise ParseError(
                        "exponent denominator must be a literal", t3.line, t3.column
                    )
                value = value / Fraction(t3.text)
        return sign * value

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return self.alg.const(Fraction(t.text))
        if t.kind == "ident":
            if t.text == "exp":
                nxt = self.peek()
                if nxt.kind == "op" and nxt.text == "(":
                    self.take()
                    inner = self.expr()
                    self.expect_op(")")
                    return self.alg.exp(inner, t)
            return self.alg.var(t.text, t)
        if t.kind == "op" and t.text == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {t.text!r}", t.line, t.column)


class _PolyAlgebra:
    """Values are MultiPoly; division only by nonzero constants."""

    def __init__(self, names: list[str]):
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.arity = len(names)

    def const(self, c: Fraction) -> MultiPoly:
        return MultiPoly.constant(self.arity, c)

    def var(self, name: str, tok: Token) -> MultiPoly:
        if name not in self.index:
            raise ParseError(f"unknown variable {name!r}", tok.line, tok.column)
        return MultiPoly.variable(self.arity, self.index[name])

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b, tok: Token):
        if not b.is_constant():
            raise ParseError(
                "non-polynomial expression: division by a non-constant",
                tok.line,
                tok.column,
            )
        c = b.constant_value()
        if c == 0:
            raise ParseError("division by zero", tok.line, tok.column)
        return a.scale(Fraction(1) / c)

    def neg(self, a):
        return -a

    def pow(self, a, e: Fraction, tok: Token):
        if e.denominator != 1 or e < 0:
            raise ParseError(
                "polynomial exponents must be nonnegative integers", tok.line, tok.column
            )
        return a ** int(e)

    def exp(self, a, tok: Token):
        raise ParseError("exp(...) is not allowed in a polynomial", tok.line, tok.column)


class _RatAlgebra:
    """Values are RatFunc."""

    def __init__(self, names: list[str]):
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.arity = len(names)

    def const(self, c: Fraction) -> RatFunc:
        return RatFunc.constant(self.arity, c)

    def var(self, name: str, tok: Token) -> RatFunc:
        if name not in self.index:
            raise ParseError(f"unknown variable {name!r}", tok.line, tok.column)
        return RatFunc(MultiPoly.variable(self.arity, self.index[name]))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b, tok: Token):
        if b.is_zero():
            raise ParseError("division by zero", tok.line, tok.column)
        return a / b

    def neg(self, a):
        return -a

    def pow(self, a, e: Fraction, tok: Token):
        if e.denominator != 1:
            raise ParseError(
                "rational expressions admit only integer exponents", tok.line, tok.column
            )
        return a ** int(e)

    def exp(self, a, tok: Token):
        raise ParseError(
            "exp(...) is not allowed in a rational expression", tok.line, tok.column
        )


class _DarbouxAlgebra:
    """Values are RatFunc until exp or a fractional power lifts them to
    DarbouxFunction; sums of non-rational values are rejected."""

    def __init__(self, names: list[str]):
        self.rat = _RatAlgebra(names)
        self.arity = len(names)

    def const(self, c):
        return self.rat.const(c)

    def var(self, name, tok):
        return self.rat.var(name, tok)

    def _lift(self, a) -> DarbouxFunction:
        if isinstance(a, DarbouxFunction):
            return a
        if a.is_zero():
            raise ZeroDivisionInField("zero is not a Darboux function")
        return DarbouxFunction.of_ratfunc(a)

    def add(self, a, b):
        if isinstance(a, DarbouxFunction) or isinstance(b, DarbouxFunction):
            raise ParseError("cannot add non-rational Darboux expressions")
        return a + b

    def sub(self, a, b):
        if isinstance(a, DarbouxFunction) or isinstance(b, DarbouxFunction):
            raise ParseError("cannot subtract non-rational Darboux expressions")
        return a - b

    def mul(self, a, b):
        if isinstance(a, DarbouxFunction) or isinstance(b, DarbouxFunction):
            return self._lift(a) * self._lift(b)
        return a * b

    def div(self, a, b, tok):
        if isinstance(a, DarbouxFunction) or isinstance(b, DarbouxFunction):
            return self._lift(a) * self._lift(b).inverse()
        return self.rat.div(a, b, tok)

    def neg(self, a):
        if isinstance(a, DarbouxFunction):
            raise ParseError("negation of a non-rational Darboux expression")
        return -a

    def pow(self, a, e: Fraction, tok):
        if isinstance(a, DarbouxFunction):
            return a**e
        if e.denominator == 1:
            return a ** int(e)
        return self._lift(a) ** e

    def exp(self, a, tok):
        if isinstance(a, DarbouxFunction):
            raise ParseError("exp of a non-rational expression", tok.line, tok.column)
        return DarbouxFunction(a)


def parse_poly(text: str, names: list[str]) -> MultiPoly:
    return _Parser(tokenize(text), _PolyAlgebra(names)).parse()


def parse_ratfunc(text: str, names: list[str]) -> RatFunc:
    return _Parser(tokenize(text), _RatAlgebra(names)).parse()


def parse_darboux(text: str, names: list[str]) -> DarbouxFunction:
    value = _Parser(tokenize(text), _DarbouxAlgebra(names)).parse()
    if isinstance(value, DarbouxFunction):
        return value
    return DarbouxFunction.of_ratfunc(value)
