"""Polynomial vector fields: parsing, degree, divergence, Lie derivative."""

from __future__ import annotations

from .errors import ParseError
from .forms import OneForm
from .multipoly import MINUS_INFINITY, MultiPoly
from .parsing import parse_poly, tokenize
from .ratfunc import RatFunc


class PolyVectorField:
    """The system x' = P(x) with named, ordered variables."""

    __slots__ = ("var_names", "components")

    def __init__(self, var_names: list[str], components: list[MultiPoly]):
        var_names = list(var_names)
        components = list(components)
        if len(var_names) != len(components):
            raise ParseError(
                f"{len(var_names)} variables but {len(components)} equations"
            )
        if len(set(var_names)) != len(var_names):
            raise ParseError("duplicate variable name")
        for c in components:
            if c.arity != len(var_names):
                raise ParseError("component arity does not match variable count")
        object.__setattr__(self, "var_names", tuple(var_names))
        object.__setattr__(self, "components", tuple(components))

    def __setattr__(self, name, value):
        raise AttributeError("PolyVectorField is immutable")

    @property
    def arity(self) -> int:
        return len(self.var_names)

    @property
    def degree(self) -> int:
        degs = [c.total_degree() for c in self.components if not c.is_zero()]
        return max(degs) if degs else 0

    def divergence(self) -> MultiPoly:
        total = MultiPoly.zero(self.arity)
        for i, c in enumerate(self.components):
            total = total + c.derivative(i)
        return total

    def lie_derivative(self, f: MultiPoly) -> MultiPoly:
        if f.arity != self.arity:
            raise ParseError(f"arity mismatch: field {self.arity}, function {f.arity}")
        total = MultiPoly.zero(self.arity)
        for i, c in enumerate(self.components):
            total = total + c * f.derivative(i)
        return total

    def lie_derivative_ratfunc(self, f: RatFunc) -> RatFunc:
        if f.arity != self.arity:
            raise ParseError("arity mismatch")
        total = RatFunc.zero(self.arity)
        for i, c in enumerate(self.components):
            total = total + RatFunc(c) * f.derivative(i)
        return total

    def lie_derivative_log(self, w: OneForm) -> RatFunc:
        """X(log F) = sum w_i P_i for w = d(log F)."""
        if w.arity != self.arity:
            raise ParseError("arity mismatch")
        total = RatFunc.zero(self.arity)
        for wi, Pi in zip(w.components, self.components):
            total = total + wi * RatFunc(Pi)
        return total

    def permuted(self, order: list[int]) -> "PolyVectorField":
        """The same system with variables reordered by the given permutation."""
        if sorted(order) != list(range(self.arity)):
            raise ParseError(f"{order} is not a permutation of the variables")
        names = [self.var_names[i] for i in order]
        # exponent vectors and component slots both move
        comps = []
        for i in order:
            src = self.components[i]
            comps.append(
                MultiPoly(
                    self.arity,
                    {tuple(e[j] for j in order): c for e, c in src.terms.items()},
                )
            )
        return PolyVectorField(names, comps)

    def render(self) -> str:
        lines = ["vars " + ", ".join(self.var_names)]
        for name, c in zip(self.var_names, self.components):
            lines.append(f"d{name} = {c.render(list(self.var_names))}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"PolyVectorField({', '.join(self.var_names)})"


def parse_system(text: str) -> PolyVectorField:
    """Parse the system grammar: a `vars` line then one `d<var> = expr` line each."""
    lines = []
    current: list = []
    for tok in tokenize(text):
        if tok.kind in ("newline", "end"):
            if current:
                lines.append(current)
            current = []
        else:
            current.append(tok)
    if not lines:
        raise ParseError("empty system description")
    header = lines[0]
    if not (header[0].kind == "ident" and header[0].text == "vars"):
        raise ParseError(
            "system must start with a 'vars' line", header[0].line, header[0].column
        )
    names = []
    expect_name = True
    for tok in header[1:]:
        if expect_name:
            if tok.kind != "ident":
                raise ParseError("expected variable name", tok.line, tok.column)
            if tok.text in names:
                raise ParseError(f"duplicate variable {tok.text!r}", tok.line, tok.column)
            names.append(tok.text)
            expect_name = False
        else:
            if tok.kind != "op" or tok.text != ",":
                raise ParseError("expected ','", tok.line, tok.column)
            expect_name = True
    if not names or expect_name:
        raise ParseError("malformed vars line", header[0].line, header[0].column)
    components: dict[str, MultiPoly] = {}
    for line in lines[1:]:
        head = line[0]
        if head.kind != "ident" or not head.text.startswith("d"):
            raise ParseError("expected a d<var> = ... line", head.line, head.column)
        var = head.text[1:]
        if var not in names:
            raise ParseError(f"unknown variable {var!r}", head.line, head.column)
        if var in components:
            raise ParseError(f"duplicate equation for {var!r}", head.line, head.column)
        if len(line) < 2 or line[1].kind != "op" or line[1].text != "=":
            raise ParseError("expected '='", head.line, head.column)
        rhs_tokens = line[2:]
        if not rhs_tokens:
            raise ParseError("empty right-hand side", head.line, head.column)
        # re-render the token span for the expression parser
        expr = " ".join(t.text for t in rhs_tokens)
        components[var] = parse_poly(expr, names)
    missing = [n for n in names if n not in components]
    if missing:
        raise ParseError(f"missing equation for {', '.join(missing)}")
    return PolyVectorField(names, [components[n] for n in names])
