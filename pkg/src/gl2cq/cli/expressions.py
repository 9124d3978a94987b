"""
Polynomial expressions for the command line.

Grammar (whitespace is ignored)::

    expr   := term (("+" | "-") term)*
    term   := ("+" | "-")? factor ("*" factor)*
    factor := atom ("^" exponent)?
    atom   := number | "i" | "q" | "mu" | "x[" int "," int "]" | "(" expr ")"
    number := digits ("/" digits)? "i"?

``q`` may carry negative exponents, everything else nonnegative ones and
variables positive ones. Positions in error messages are 1-based columns.
"""

from __future__ import annotations

import typing

from dataclasses import dataclass
from fractions import Fraction

from ..algebra.scalar import GaussianRational, Scalar
from ..errors import ExpressionSyntaxError
from ..module.polyrep import Monomial, Polynomial


# Syntax tree

@dataclass(frozen=True)
class Number:
    value: GaussianRational


@dataclass(frozen=True)
class QPower:
    exponent: int = 1


@dataclass(frozen=True)
class MuPower:
    exponent: int = 1


@dataclass(frozen=True)
class Variable:
    m: int
    n: int
    exponent: int = 1


@dataclass(frozen=True)
class Power:
    base: "ExprNode"
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: tuple["ExprNode", ...]


@dataclass(frozen=True)
class Sum:
    terms: tuple[tuple[int, "ExprNode"], ...]
    """(sign, term) pairs."""


ExprNode = typing.Union[Number, QPower, MuPower, Variable, Power, Product, Sum]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected: str):
        raise ExpressionSyntaxError(self.pos + 1, expected, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, token: str) -> bool:
        self.skip()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.accept(token):
            self.error(f"'{token}'")

    def digits(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[start:self.pos]

    def integer(self, what: str = "an integer") -> int:
        negative = self.accept("-")
        if not negative:
            self.accept("+")
        digits = self.digits()
        if not digits:
            self.error(what)
        return -int(digits) if negative else int(digits)

    def parse(self) -> ExprNode:
        node = self.expr()
        if self.peek():
            self.error("'+', '-', '*' or end of input")
        return node

    def expr(self) -> ExprNode:
        terms = [self.signed_term()]
        while True:
            if self.accept("+"):
                terms.append((1, self.term()))
            elif self.accept("-"):
                terms.append((-1, self.term()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def signed_term(self) -> tuple[int, ExprNode]:
        if self.accept("-"):
            return -1, self.term()
        self.accept("+")
        return 1, self.term()

    def term(self) -> ExprNode:
        factors = [self.factor()]
        while self.accept("*"):
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def exponent(self, allow_negative: bool) -> int:
        self.skip()
        parenthesised = self.accept("(")
        position = self.pos
        value = self.integer("an integer exponent")
        if parenthesised:
            self.expect(")")
        if value < 0 and not allow_negative:
            self.pos = position
            self.error("a nonnegative exponent")
        return value

    def factor(self) -> ExprNode:
        atom = self.atom()
        if not self.accept("^"):
            return atom
        if isinstance(atom, QPower):
            return QPower(self.exponent(allow_negative=True))
        if isinstance(atom, MuPower):
            return MuPower(self.exponent(allow_negative=False))
        if isinstance(atom, Variable):
            position = self.pos
            exponent = self.exponent(allow_negative=False)
            if exponent < 1:
                self.pos = position
                self.skip()
                self.error("a positive exponent")
            return Variable(atom.m, atom.n, exponent)
        return Power(atom, self.exponent(allow_negative=False))

    def atom(self) -> ExprNode:
        char = self.peek()
        if char.isdigit():
            return self.number()
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if self.accept("mu"):
            return MuPower()
        if self.accept("q"):
            return QPower()
        if self.accept("i"):
            return Number(GaussianRational(0, 1))
        if self.accept("x"):
            self.expect("[")
            m = self.integer()
            self.expect(",")
            n = self.integer()
            self.expect("]")
            return Variable(m, n)
        self.error("a number, 'i', 'q', 'mu', 'x[m,n]' or '('")

    def number(self) -> Number:
        numerator = self.digits()
        if not numerator:
            self.error("a number")
        value = Fraction(int(numerator))
        if self.accept("/"):
            denominator = self.digits()
            if not denominator:
                self.error("a denominator")
            if int(denominator) == 0:
                self.pos -= len(denominator)
                self.error("a nonzero denominator")
            value = value / int(denominator)
        if self.accept("i"):
            return Number(GaussianRational(0, value))
        return Number(GaussianRational(value))


def parse_expression(text: str) -> ExprNode:
    return _Parser(text).parse()


def evaluate(node: ExprNode) -> Polynomial:
    if isinstance(node, Number):
        return Polynomial.constant(node.value)
    if isinstance(node, QPower):
        return Polynomial.constant(Scalar.q(node.exponent))
    if isinstance(node, MuPower):
        return Polynomial.constant(Scalar.mu(node.exponent))
    if isinstance(node, Variable):
        return Polynomial.monomial(Monomial.variable((node.m, node.n), node.exponent))
    if isinstance(node, Power):
        base = evaluate(node.base)
        result = Polynomial.one()
        for _ in range(node.exponent):
            result = result * base
        return result
    if isinstance(node, Product):
        result = Polynomial.one()
        for factor in node.factors:
            result = result * evaluate(factor)
        return result
    if isinstance(node, Sum):
        result = Polynomial.zero()
        for sign, term in node.terms:
            value = evaluate(term)
            result = result + (value if sign > 0 else -value)
        return result
    raise TypeError(f"Unknown expression node {node!r}.")


def parse_poly(text: str) -> Polynomial:
    """Parse ``text`` into a :class:`Polynomial`."""
    return evaluate(parse_expression(text))


def render(p: Polynomial) -> str:
    """Text that :func:`parse_poly` maps back to ``p``."""
    return str(p)
