"""Exact rational functions p(x)/q(x) in canonical form.

The canonical form has a monic denominator coprime to the numerator, and
zero is ``0/1``. Structural equality is therefore semantic equality.
"""

from __future__ import annotations

import re

from . import kernels as K
from .field import QQ
from .poly import Poly, format_poly

__all__ = ["Frac", "FracSyntaxError", "frac_arith", "parse_frac"]


def _normalize(n: tuple, d: tuple, field):
    if not d:
        raise ZeroDivisionError("fraction with zero denominator")
    if not n:
        return (), (field.one,)
    if len(d) > 1:
        g = K.poly_gcd(n, d)
        if len(g) > 1:
            n = K.poly_divmod(n, g)[0]
            d = K.poly_divmod(d, g)[0]
    lead = d[-1]
    if lead != 1:
        inv = 1 / lead
        n = K.poly_scale(n, inv)
        d = K.poly_scale(d, inv)
    return n, d


class Frac:
    """An element of k(x). Immutable and hashable."""

    __slots__ = ("_n", "_d", "field")

    def __init__(self, num=0, den=1, field=None):
        if field is None:
            if isinstance(num, (Poly, Frac)):
                field = num.field
            elif isinstance(den, (Poly, Frac)):
                field = den.field
            else:
                field = QQ
        a = _as_frac(num, field)
        b = _as_frac(den, field)
        q = a / b
        self._n, self._d, self.field = q._n, q._d, field

    @classmethod
    def _make(cls, n: tuple, d: tuple, field) -> Frac:
        f = object.__new__(cls)
        f._n = n
        f._d = d
        f.field = field
        return f

    @classmethod
    def x(cls, field=QQ) -> Frac:
        return cls._make((field.zero, field.one), (field.one,), field)

    @classmethod
    def const(cls, c, field=QQ) -> Frac:
        return cls._make(K.trim((field(c),)), (field.one,), field)

    @classmethod
    def zero(cls, field=QQ) -> Frac:
        return cls._make((), (field.one,), field)

    @classmethod
    def one(cls, field=QQ) -> Frac:
        return cls._make((field.one,), (field.one,), field)

    @classmethod
    def parse(cls, text: str, field=QQ) -> Frac:
        return parse_frac(text, field)

    @property
    def num(self) -> Poly:
        return Poly._raw(self._n, self.field)

    @property
    def den(self) -> Poly:
        return Poly._raw(self._d, self.field)

    def is_polynomial(self) -> bool:
        return len(self._d) == 1

    def is_constant(self) -> bool:
        return len(self._d) == 1 and len(self._n) <= 1

    def constant_value(self):
        """The scalar value of a constant fraction."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._n[0] if self._n else self.field.zero

    def is_rational(self) -> bool:
        return bool(self._d[0])

    def __bool__(self):
        return bool(self._n)

    def __eq__(self, other):
        if isinstance(other, Frac):
            return self._n == other._n and self._d == other._d
        if isinstance(other, int):
            return self == Frac.const(other, self.field)
        return NotImplemented

    def __hash__(self):
        return hash((self._n, self._d))

    def _coerce(self, other) -> Frac:
        if isinstance(other, Frac):
            return other
        return _as_frac(other, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o._n:
            return self
        if not self._n:
            return o
        if len(self._d) == 1 and len(o._d) == 1:
            return Frac._make(K.poly_add(self._n, o._n), self._d, self.field)
        if self._d == o._d:
            n, d = K.poly_add(self._n, o._n), self._d
        else:
            n = K.poly_add(K.poly_mul(self._n, o._d), K.poly_mul(o._n, self._d))
            d = K.poly_mul(self._d, o._d)
        return Frac._make(*_normalize(n, d, self.field), self.field)

    __radd__ = __add__

    def __neg__(self):
        return Frac._make(K.poly_neg(self._n), self._d, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self._n or not o._n:
            return Frac.zero(self.field)
        if len(self._d) == 1 and len(o._d) == 1:
            return Frac._make(K.poly_mul(self._n, o._n), self._d, self.field)
        n = K.poly_mul(self._n, o._n)
        d = K.poly_mul(self._d, o._d)
        return Frac._make(*_normalize(n, d, self.field), self.field)

    __rmul__ = __mul__

    def inv(self) -> Frac:
        if not self._n:
            raise ZeroDivisionError("inverse of zero fraction")
        n, d = self._d, self._n
        lead = d[-1]
        if lead != 1:
            inv = 1 / lead
            n = K.poly_scale(n, inv)
            d = K.poly_scale(d, inv)
        return Frac._make(n, d, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inv()
        out = Frac.one(self.field)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __str__(self):
        num = format_poly(self._n, self.field)
        if len(self._d) == 1:
            return num
        if sum(1 for c in self._n if c) > 1:
            num = f"({num})"
        den = format_poly(self._d, self.field)
        if sum(1 for c in self._d if c) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Frac({str(self)!r})"


def _as_frac(value, field) -> Frac:
    if isinstance(value, Frac):
        return value
    if isinstance(value, Poly):
        return Frac._make(value.coeffs, (field.one,), field)
    if isinstance(value, str):
        return parse_frac(value, field)
    try:
        c = field(value)
    except TypeError:
        return NotImplemented
    return Frac._make(K.trim((c,)), (field.one,), field)


def frac_arith(op: str, a: Frac, b: Frac | None = None) -> Frac:
    """Dispatch ``add``, ``mul``, ``inv`` or ``neg`` on fractions."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "neg":
        return -a
    raise ValueError(f"unknown fraction operation {op!r}")


class FracSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FracSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        start = m.start(m.lastindex)
        out.append((m.group(m.lastindex), start))
        pos = m.end()
    out.append(("", len(text)))
    return out


def parse_frac(text: str, field=QQ) -> Frac:
    """Parse text such as ``(1 + 2*x) / (1 - x)`` or ``3/2*x^2`` exactly."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i][0]

    def take(expected=None):
        nonlocal i
        tok, pos = toks[i]
        if expected is not None and tok != expected:
            raise FracSyntaxError(f"expected {expected!r}, found {tok or 'end of input'!r}", pos)
        i += 1
        return tok

    def expr():
        acc = term()
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = factor()
        while peek() in ("*", "/"):
            op = take()
            rhs = factor()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs:
                    raise FracSyntaxError("division by zero", toks[i - 1][1])
                acc = acc / rhs
        return acc

    def factor():
        if peek() == "-":
            take()
            return -factor()
        if peek() == "+":
            take()
            return factor()
        base = atom()
        if peek() in ("^", "**"):
            take()
            sign = 1
            if peek() == "-":
                take()
                sign = -1
            tok, pos = toks[i]
            if not tok.isdigit():
                raise FracSyntaxError("expected an integer exponent", pos)
            take()
            k = sign * int(tok)
            if k < 0 and not base:
                raise FracSyntaxError("division by zero", pos)
            return base**k
        return base

    def atom():
        tok, pos = toks[i]
        if tok.isdigit():
            take()
            return Frac.const(int(tok), field)
        if tok == "x":
            take()
            return Frac.x(field)
        if tok == "(":
            take()
            val = expr()
            take(")")
            return val
        raise FracSyntaxError(f"unexpected {tok or 'end of input'!r}", pos)

    val = expr()
    if peek() != "":
        raise FracSyntaxError(f"unexpected {peek()!r}", toks[i][1])
    return val
