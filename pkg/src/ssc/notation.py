"""Parsing of the text notation for data sets and abelian data sets.

Grammar (whitespace is ignored)::

    dataset  := "(" int "," int ["," rot] ";" [pairs] ")"
    rot      := int | "*"
    pairs    := pair ("," pair)*
    pair     := "(" int "," int ")" | "((" int "," int ")," int ")"
    abelian  := "(" int "*" int "," int ";" [triples] ")"
    triples  := triple ("," triple)*
    triple   := "[" simple "," simple "," int "]" ["*" int]
    simple   := "(" int "," int ")"

With ``lenient=True`` the parser also accepts the typeset forms found in
printed tables: ``\\cdot`` or a middle dot for ``*`` in the degree,
``_k`` for a multiplicity suffix, and ``(n,g0;r;)`` for a free class.

>>> str(parse_dataset("(6,0;((1,6),2),(2,3))"))
'(6,0;(2,3),((1,6),2))'
>>> str(parse_abelian("(2\\\\cdot2,1;[(1,2),(0,1),2]_2)", lenient=True))
'(2*2,1;[(1,2),(0,1),2]*2)'
"""

from __future__ import annotations

import re

from .abelian import AbelianDataSet, AbelianTriple
from .cyclic import ConePair, DataSet


class ParseError(ValueError):
    def __init__(self, production: str, text: str, pos: int):
        super().__init__(f"expected {production} at position {pos} in {text!r}")
        self.production = production
        self.pos = pos


class _Cursor:
    def __init__(self, text: str, production: str):
        self.text = text
        self.pos = 0
        self.production = production

    def fail(self, what=None):
        raise ParseError(what or self.production, self.text, self.pos)

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def eat(self, s: str):
        if not self.peek(s):
            self.fail(f"{self.production}: {s!r}")
        self.pos += len(s)

    def maybe(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def int(self) -> int:
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.fail(f"{self.production}: integer")
        self.pos = m.end()
        return int(m.group())

    def end(self):
        if self.pos != len(self.text):
            self.fail(f"{self.production}: end of input")


def _clean(text: str, lenient: bool) -> str:
    text = re.sub(r"\s+", "", text)
    if lenient:
        text = text.replace("$", "").replace("\\cdot", "*").replace("·", "*")
        text = re.sub(r"\)\^\*$", ")", text)
        text = re.sub(r"_\{?(\d+)\}?", r"*\1", text)
    return text


def _simple(c: _Cursor):
    c.eat("(")
    a = c.int()
    c.eat(",")
    b = c.int()
    c.eat(")")
    return a, b


def _pair(c: _Cursor):
    if c.peek("(("):
        c.eat("(")
        p = _simple(c)
        c.eat(",")
        k = c.int()
        c.eat(")")
        return [p] * k
    return [_simple(c)]


def parse_dataset(text: str, lenient: bool = False) -> DataSet:
    c = _Cursor(_clean(text, lenient), "dataset")
    c.eat("(")
    n = c.int()
    c.eat(",")
    g0 = c.int()
    rotation = 0
    if c.maybe(","):
        rotation = None if c.maybe("*") else c.int()
    c.eat(";")
    pairs = []
    if lenient and rotation == 0 and re.compile(r"\d+;\)").match(c.text, c.pos):
        rotation = c.int()  # printed free form (n,g0;r;)
        c.eat(";")
    elif not c.peek(")"):
        pairs += _pair(c)
        while c.maybe(","):
            pairs += _pair(c)
    c.eat(")")
    c.end()
    if pairs and rotation not in (0, None):
        c.fail("dataset: no rotation when cone pairs are present")
    if not pairs and rotation == 0:
        c.fail("dataset: a rotation for a free class")
    return DataSet(n, g0, 0 if pairs else rotation, tuple(ConePair(a, b) for a, b in pairs))


def parse_abelian(text: str, lenient: bool = False) -> AbelianDataSet:
    c = _Cursor(_clean(text, lenient), "abelian")
    c.eat("(")
    m = c.int()
    c.eat("*")
    n = c.int()
    c.eat(",")
    g0 = c.int()
    c.eat(";")
    triples = []
    if not c.peek(")"):
        while True:
            c.eat("[")
            gp = _simple(c)
            c.eat(",")
            fp = _simple(c)
            c.eat(",")
            order = c.int()
            c.eat("]")
            k = c.int() if c.maybe("*") else 1
            triples += [AbelianTriple(ConePair(*gp), ConePair(*fp), order)] * k
            if not c.maybe(","):
                break
    c.eat(")")
    c.end()
    return AbelianDataSet(m, n, g0, tuple(triples))


def parse_factor_pair(text: str, lenient: bool = False):
    """``[D_G;D_F]`` as printed in tables; returns ``(d_g, d_f)``."""
    t = _clean(text, lenient)
    if not (t.startswith("[") and t.endswith("]")):
        raise ParseError("factor pair: '[' D_G ';' D_F ']'", text, 0)
    body = t[1:-1]
    depth = 0
    for i, ch in enumerate(body):
        depth += ch == "("
        depth -= ch == ")"
        if ch == ";" and depth == 0:
            return parse_dataset(body[:i], lenient), parse_dataset(body[i + 1:], lenient)
    raise ParseError("factor pair: top-level ';'", text, 0)
