"""Text format for polynomials.

Grammar (whitespace is insignificant)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := ("+" | "-") unary | power
    power   := atom ("^" INTEGER)?
    atom    := INTEGER ("/" INTEGER)? | NAME | "(" expr ")"

``p/q`` is only a rational literal; there is no general division.  Printing a
MultiPoly with ``str`` yields text this grammar reads back to the same value.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, NamedTuple, Sequence

from .core import MultiPoly


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownVariable(ParseError):
    pass


class _Tok(NamedTuple):
    kind: str
    value: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^/()]))")


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind=None, value=None) -> _Tok:
        t = self.cur
        if (kind and t.kind != kind) or (value and t.value != value):
            want = value or kind
            got = t.value or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", t.pos, self.text)
        self.i += 1
        return t

    def at(self, value) -> bool:
        return self.cur.kind == "op" and self.cur.value == value

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self.cur.kind != "end":
            raise ParseError(f"unexpected {self.cur.value!r}", self.cur.pos, self.text)
        return p

    def expr(self) -> MultiPoly:
        p = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().value
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MultiPoly:
        p = self.unary()
        while self.at("*"):
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> MultiPoly:
        if self.at("-"):
            self.take()
            return -self.unary()
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.at("^"):
            self.take()
            exp = int(self.take("int").value)
            return base**exp
        return base

    def atom(self) -> MultiPoly:
        t = self.cur
        if t.kind == "int":
            self.take()
            value = Fraction(int(t.value))
            if self.at("/"):
                self.take()
                den = self.take("int")
                if int(den.value) == 0:
                    raise ParseError("zero denominator", den.pos, self.text)
                value /= int(den.value)
            return MultiPoly.constant(value, self.variables)
        if t.kind == "name":
            self.take()
            if t.value not in self.variables:
                raise UnknownVariable(f"unknown variable {t.value!r}", t.pos, self.text)
            return MultiPoly.var(t.value, self.variables)
        if self.at("("):
            self.take()
            p = self.expr()
            self.take("op", ")")
            return p
        got = t.value or "end of input"
        raise ParseError(f"unexpected {got!r}", t.pos, self.text)


def parse(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse ``text`` into a canonical MultiPoly over ``variables``."""
    return _Parser(str(text), variables).parse()
