"""Concrete syntax for circuits (``.sfc`` files).

Grammar, with ``+`` binding tighter than ``;`` and both left-associative::

    seq  := par (";" par)*
    par  := atom ("+" atom)*
    atom := NAME [ "(" RATIONAL ")" ] | "(" seq ")"

``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq

from .circuit import GENERATOR_SORTS, Circuit, Gen, Par, Seq, SortError

__all__ = ["CircuitSyntaxError", "parse", "render", "load"]


class CircuitSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.pos = pos
        self.line = line
        self.col = col


_TOKEN = re.compile(r"(?P<ws>\s+|#[^\n]*)|(?P<name>[a-z]+)|(?P<num>-?\d+(?:/\d+)?)|(?P<sym>[;+()])")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise CircuitSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        if m.lastgroup != "ws":
            toks.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


def parse(text: str) -> Circuit:
    """Parse circuit text; raises ``CircuitSyntaxError`` or ``SortError``."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = toks[i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = repr(value) if value else kind
            got = repr(tok[1]) if tok[0] != "eof" else "end of input"
            raise CircuitSyntaxError(f"expected {want}, found {got}", tok[2], text)
        i += 1
        return tok

    def seq():
        acc = par()
        while peek()[1] == ";":
            pos = take()[2]
            start = peek()[2]
            rhs = par()
            try:
                acc = Seq(acc, rhs)
            except SortError as exc:
                line = text.count("\n", 0, pos) + 1
                raise SortError(
                    f"sort error at line {line}: cannot compose {render(acc)} : {acc.sort} with "
                    f"{text[start:peek()[2]].strip()} : {rhs.sort} ({exc.left} right ports vs {exc.right} left ports)",
                    subterm=rhs,
                    left=exc.left,
                    right=exc.right,
                ) from None
        return acc

    def par():
        acc = atom()
        while peek()[1] == "+":
            take()
            acc = Par(acc, atom())
        return acc

    def atom():
        kind, val, pos = peek()
        if val == "(":
            take()
            c = seq()
            take("sym", ")")
            return c
        if kind != "name":
            got = repr(val) if kind != "eof" else "end of input"
            raise CircuitSyntaxError(f"expected a generator, found {got}", pos, text)
        take()
        if val not in GENERATOR_SORTS:
            raise CircuitSyntaxError(f"unknown generator {val!r}", pos, text)
        if val in ("scalar", "coscalar"):
            take("sym", "(")
            _, num, npos = take("num")
            take("sym", ")")
            try:
                r = mpq(Fraction(num))
            except ZeroDivisionError:
                raise CircuitSyntaxError("zero denominator", npos, text) from None
            return Gen(val, r)
        return Gen(val)

    c = seq()
    kind, val, pos = peek()
    if kind != "eof":
        raise CircuitSyntaxError(f"unexpected {val!r}", pos, text)
    return c


def load(path) -> Circuit:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def render(c: Circuit) -> str:
    """Canonical text; ``parse(render(c)) == c`` structurally."""
    if isinstance(c, Gen):
        if c.param is None:
            return c.kind
        return f"{c.kind}({c.param})"
    if isinstance(c, Seq):
        right = render(c.right)
        if isinstance(c.right, Seq):
            right = f"({right})"
        return f"{render(c.left)} ; {right}"
    top = render(c.top)
    if isinstance(c.top, Seq):
        top = f"({top})"
    bottom = render(c.bottom)
    if isinstance(c.bottom, (Seq, Par)):
        bottom = f"({bottom})"
    return f"{top} + {bottom}"
