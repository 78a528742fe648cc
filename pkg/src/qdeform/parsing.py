"""Expression grammar for polynomials over a presentation.

Terms are rational literals, the reserved scalars q and i, and generator
identifiers, combined with + - * / ^ and parentheses.  ^ binds tightest and
takes a nonnegative integer exponent; * and / are explicit (no juxtaposition);
unary minus applies below ^.  Division is restricted to invertible scalars,
which is what rule strings such as (1/q)*x*y need.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ncalg import NCPoly, Presentation, PresentationError
from .scalars import QExact, QExactError


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", pos)
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, pres: Presentation):
        self.text = text
        self.pres = pres
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.advance()

    # grammar: expr := term (('+'|'-') term)*
    #          term := factor (('*'|'/') factor)*
    #          factor := '-' factor | power
    #          power := atom ('^' INT)?
    #          atom := '(' expr ')' | INT | 'q' | 'i' | generator

    def parse(self) -> NCPoly:
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", pos)
        return value

    def expr(self) -> NCPoly:
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self) -> NCPoly:
        value = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.advance()
                rhs = self.factor()
                if val == "*":
                    value = value * rhs
                else:
                    value = self._divide(value, rhs, pos)
            else:
                return value

    def _divide(self, num: NCPoly, den: NCPoly, pos: int) -> NCPoly:
        const = den.terms.get((0,) * self.pres.arity)
        if len(den.terms) > 1 or (den.terms and const is None):
            raise ParseError("division is only defined by invertible scalars", pos)
        if const is None:
            raise ParseError("division by zero", pos)
        try:
            inv = const.inverse()
        except QExactError as exc:
            raise ParseError(str(exc), pos) from None
        return num.scale(inv)

    def factor(self) -> NCPoly:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.advance()
            return -self.factor()
        return self.power()

    def power(self) -> NCPoly:
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            kind, exp, pos = self.peek()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", pos)
            self.advance()
            return base ** exp
        return base

    def atom(self) -> NCPoly:
        kind, val, pos = self.advance()
        if kind == "int":
            return self.pres.scalar(Fraction(val))
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "name":
            if val == "q":
                return self.pres.scalar(QExact.q_power(1))
            if val == "i":
                return self.pres.scalar(QExact.i())
            try:
                return self.pres.gen(val)
            except PresentationError:
                raise ParseError(f"unknown identifier {val!r}", pos) from None
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_expr(text: str, pres: Presentation) -> NCPoly:
    """Parse an expression to a normal-ordered polynomial."""
    return _Parser(text, pres).parse()


def parse_rule(text: str) -> Presentation:
    """Build a two-generator presentation from a rule string.

    The string has the shape "b*a -> <expression>": the left side is a
    product of two distinct generators given in reversed order (so the
    generator order is a < b), and the right side is their normal-ordered
    rewrite target.
    """
    if "->" not in text:
        raise ParseError("rule must contain '->'", len(text))
    lhs_text, rhs_text = text.split("->", 1)

    lhs_tokens = [t for t in _tokenize(lhs_text) if t[0] != "end"]
    shape = [t[0] for t in lhs_tokens]
    if shape != ["name", "op", "name"] or lhs_tokens[1][1] != "*":
        raise ParseError("rule left side must be a product b*a of two generators", 0)
    b_name, a_name = lhs_tokens[0][1], lhs_tokens[2][1]
    if a_name == b_name or {a_name, b_name} & {"q", "i"}:
        raise ParseError("rule left side needs two distinct non-reserved names", 0)

    # generator order a < b; the left side b*a is the out-of-order pair
    skeleton = Presentation(generators=(a_name, b_name), rules={}, name="custom")
    try:
        rhs = parse_expr(rhs_text, skeleton)
    except PresentationError:
        raise ParseError(
            "rule target must be normal-ordered in the generators a < b", 0
        ) from None
    if rhs.degree() > 2:
        raise ParseError("rule target degree must be at most 2", len(text))
    targets = tuple(rhs.terms.items())
    if not targets:
        raise ParseError("rule target must be nonzero", len(text))
    return Presentation(
        generators=(a_name, b_name),
        rules={(1, 0): targets},
        name="custom",
    )
