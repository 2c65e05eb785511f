"""Text format for polynomials.

Grammar (whitespace is insignificant)::

    expr     := term (("+" | "-") term)*
    term     := unary ("*" unary)*
    unary    := ("+" | "-") unary | power
    power    := atom ("^" INTEGER)?
    atom     := RATIONAL | NAME | "(" expr ")"
    RATIONAL := INTEGER ("/" INTEGER)?
    NAME     := identifier declared in the variable list

This is the only polynomial format read by the command line tool, and
``str(p)`` always produces text that parses back to ``p``.
"""

import re
from fractions import Fraction

from ..errors import ParseError, UnknownVariable
from .polynomial import Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([^\W\d]\w*)|(\S)|$)", re.UNICODE)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, vars):
        self.text = text
        self.vars = tuple(vars)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, ch):
        kind, val, pos = self.take()
        if kind != "op" or val != ch:
            raise ParseError(f"expected {ch!r}, found {val or 'end of input'!r}", pos, self.text)

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos, self.text)
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self):
        p = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", pos, self.text)
            p = p ** int(val)
        return p

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            num = int(val)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "int":
                    raise ParseError("denominator must be an integer literal", p2, self.text)
                if int(v2) == 0:
                    raise ParseError("zero denominator", p2, self.text)
                return Polynomial.constant(self.vars, Fraction(num, int(v2)))
            return Polynomial.constant(self.vars, num)
        if kind == "name":
            if val not in self.vars:
                raise UnknownVariable(f"unknown variable {val!r}", pos, self.text)
            return Polynomial.variable(self.vars, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, self.text)


def parse_polynomial(text, vars):
    """Parse ``text`` into a :class:`Polynomial` over ``vars``."""
    return _Parser(text, vars).parse()
