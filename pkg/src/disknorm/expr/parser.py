"""Recursive-descent parser for the expression language.

Grammar (whitespace insignificant)::

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := "-" factor | power
    power  := atom ("^" signed-number)?
    atom   := number | "i" | "z" | "(" expr ")" | ("exp"|"log") "(" expr ")"

A number may carry an ``i`` suffix to make it imaginary. An exponent written
as a plain integer literal gives an integer power; any other literal
(``0.5``, ``2.0``, ``1e3``) gives a real power on the principal branch.
"""

import re
from typing import NamedTuple

from disknorm.errors import ExprSyntaxError, UnknownIdentifier
from disknorm.expr import ast

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<ident>[A-Za-z_]\w*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)
_FUNCS = {"exp": ast.exp, "log": ast.log}


class Token(NamedTuple):
    kind: str  # "num", "ident", "op", "end"
    text: str
    col: int  # 1-based


def tokenize(source):
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ExprSyntaxError(pos + 1, {"number", "identifier", "operator"}, source[pos])
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    tokens.append(Token("end", "", len(source) + 1))
    return tokens


class _Parser:
    def __init__(self, source):
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, expected):
        t = self.tok
        raise ExprSyntaxError(t.col, expected, None if t.kind == "end" else t.text)

    def accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.fail({repr(text)})

    def parse(self):
        e = self.expr()
        if self.tok.kind != "end":
            self.fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"})
        return e

    def expr(self):
        e = self.term()
        while True:
            if self.accept("+"):
                e = ast.add(e, self.term())
            elif self.accept("-"):
                e = ast.sub(e, self.term())
            else:
                return e

    def term(self):
        e = self.factor()
        while True:
            if self.accept("*"):
                e = ast.mul(e, self.factor())
            elif self.accept("/"):
                e = ast.div(e, self.factor())
            else:
                return e

    def factor(self):
        if self.accept("-"):
            return ast.neg(self.factor())
        return self.power()

    def power(self):
        base = self.atom()
        if not self.accept("^"):
            return base
        negative = self.accept("-")
        t = self.tok
        if t.kind != "num" or t.text.endswith("i"):
            self.fail({"real number"})
        self.i += 1
        if t.text.isdigit():
            n = int(t.text)
            return ast.ipow(base, -n if negative else n)
        x = float(t.text)
        return ast.rpow(base, -x if negative else x)

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            if t.text.endswith("i"):
                return ast.const(complex(0, float(t.text[:-1])))
            return ast.const(float(t.text))
        if t.kind == "ident":
            self.i += 1
            if t.text == "z":
                return ast.ZVAR
            if t.text == "i":
                return ast.const(1j)
            if t.text in _FUNCS:
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return _FUNCS[t.text](inner)
            raise UnknownIdentifier(t.text, t.col)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.fail({"number", "'z'", "'i'", "'('", "'exp'", "'log'", "'-'"})


def parse(source):
    """Parse ``source`` into an :class:`~disknorm.expr.ast.Expr`.

    >>> parse("1/(1-z)")
    div(const(1.0), sub(const(1.0), z))
    """
    return _Parser(source).parse()
