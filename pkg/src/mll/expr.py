"""Recursive-descent parser for the exact scalar/polynomial expression language.

Grammar (leading unary minus is accepted as a convenience):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := rational | 'sigma' | identifier | '(' expr ')'

Rationals are integer literals with an optional '/denominator'.  Identifiers
resolve to declared constants or chart variables; anything else is rejected
with its source position.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ExprSyntaxError, NonPolynomial, UnknownIdentifier
from .poly import Poly
from .scalar import MetallicParams, MetallicScalar, sigma


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(src: str):
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(_Token("num", src[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(_Token("name", src[i:j], i))
            i = j
            continue
        if ch in "+-*^/()":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str, variables, constants, params: MetallicParams):
        self.src = src
        self.tokens = _tokenize(src)
        self.k = 0
        self.variables = variables  # name -> index
        self.constants = constants  # name -> MetallicScalar
        self.params = params
        self.nvars = len(variables)

    def peek(self) -> _Token:
        return self.tokens[self.k]

    def take(self, kind=None) -> _Token:
        tok = self.tokens[self.k]
        if kind is not None and tok.kind != kind:
            raise ExprSyntaxError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.pos
            )
        self.k += 1
        return tok

    def parse(self) -> Poly:
        out = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {tok.text!r}", tok.pos)
        return out

    def expr(self) -> Poly:
        negate = False
        if self.peek().kind == "-":
            self.take()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek().kind in ("+", "-"):
            op = self.take()
            rhs = self.term()
            acc = acc + rhs if op.kind == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek().kind == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek().kind == "^":
            caret = self.take()
            tok = self.peek()
            if tok.kind == "-":
                raise NonPolynomial(
                    f"negative exponent at position {tok.pos}"
                )
            if tok.kind != "num":
                raise ExprSyntaxError("exponent must be a natural number", caret.pos)
            self.take()
            return base ** int(tok.text)
        return base

    def atom(self) -> Poly:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            num = int(tok.text)
            if self.peek().kind == "/":
                slash = self.take()
                den_tok = self.peek()
                if den_tok.kind != "num":
                    raise ExprSyntaxError("expected denominator", slash.pos)
                self.take()
                den = int(den_tok.text)
                if den == 0:
                    raise ExprSyntaxError("zero denominator", den_tok.pos)
                return Poly.constant(Fraction(num, den), self.nvars, self.params)
            return Poly.constant(num, self.nvars, self.params)
        if tok.kind == "name":
            self.take()
            if tok.text == "sigma":
                return Poly.constant(sigma(self.params), self.nvars, self.params)
            if tok.text in self.variables:
                return Poly.variable(self.variables[tok.text], self.nvars, self.params)
            if tok.text in self.constants:
                return Poly.constant(self.constants[tok.text], self.nvars, self.params)
            raise UnknownIdentifier(tok.text, tok.pos)
        if tok.kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise ExprSyntaxError(
            f"unexpected {tok.text or 'end of input'!r}", tok.pos
        )


def parse_expression(src: str, variables, constants,
                     params: MetallicParams) -> Poly:
    """Parse an expression into an exact polynomial over Q(sigma).

    variables: mapping chart-variable name -> index; constants: mapping
    name -> MetallicScalar.
    """
    return _Parser(src, variables, constants, params).parse()


def parse_scalar(src: str, constants, params: MetallicParams) -> MetallicScalar:
    """Parse a constant expression (no chart variables allowed)."""
    poly = parse_expression(src, {}, constants, params)
    return poly.constant_value()
