"""Base fields for circuit scalars.

Two fields are supported: the rationals (the default, backed by ``gmpy2.mpq``)
and prime fields GF(p), which exist so that set-level oracles can enumerate
every point of a small affine relation.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

__all__ = ["RationalField", "PrimeField", "GFElement", "QQ", "GF"]


class RationalField:
    """The field of rational numbers. Elements are ``gmpy2.mpq``."""

    name = "QQ"
    characteristic = 0
    is_finite = False

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, value) -> mpq:
        if isinstance(value, GFElement):
            raise TypeError("cannot coerce a GF(p) element into QQ")
        if isinstance(value, str):
            return self.parse(value)
        return mpq(value)

    def parse(self, text: str) -> mpq:
        text = text.strip()
        try:
            return mpq(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {text!r}") from exc

    def format(self, c) -> str:
        return str(mpq(c))

    def is_negative(self, c) -> bool:
        return c < 0

    def random(self, rng: random.Random, bound: int = 3, nonzero: bool = False) -> mpq:
        while True:
            num = rng.randint(-bound, bound)
            den = rng.randint(1, bound)
            c = mpq(num, den)
            if c or not nonzero:
                return c

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_qq, ())


def _qq():
    return QQ


QQ = RationalField()


class GFElement:
    """An element of GF(p) held as its least nonnegative residue."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GFElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GFElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GFElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GFElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return GFElement(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return GFElement(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF{self.p}({self.value})"

    def __str__(self):
        return str(self.value)


class PrimeField:
    """The prime field GF(p). Obtain instances through :func:`GF`."""

    characteristic: int
    is_finite = True

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = GFElement(0, p)
        self.one = GFElement(1, p)

    def __call__(self, value) -> GFElement:
        if isinstance(value, GFElement):
            if value.p != self.p:
                raise ValueError(f"cannot coerce GF({value.p}) element into GF({self.p})")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, int):
            return GFElement(value, self.p)
        q = Fraction(int(value.numerator), int(value.denominator))
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"{q} has no image in GF({self.p})")
        return GFElement(q.numerator * pow(q.denominator, -1, self.p), self.p)

    def parse(self, text: str) -> GFElement:
        try:
            return self(Fraction(text.strip()))
        except ValueError as exc:
            raise ValueError(f"not a field literal: {text!r}") from exc

    def format(self, c) -> str:
        return str(self(c).value)

    def is_negative(self, c) -> bool:
        return False

    def elements(self):
        return [GFElement(v, self.p) for v in range(self.p)]

    def random(self, rng: random.Random, bound: int = 0, nonzero: bool = False) -> GFElement:
        lo = 1 if nonzero else 0
        return GFElement(rng.randint(lo, self.p - 1), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p,))


@lru_cache(maxsize=None)
def GF(p: int = 3) -> PrimeField:
    return PrimeField(p)
