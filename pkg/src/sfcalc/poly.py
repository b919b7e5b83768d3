"""Univariate polynomials over a base field, in the register indeterminate x."""

from __future__ import annotations

from . import kernels as K
from .field import QQ


class Poly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of x**i."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=(), field=QQ):
        self.coeffs = K.trim([field(c) for c in coeffs])
        self.field = field

    @classmethod
    def _raw(cls, coeffs: tuple, field) -> Poly:
        p = object.__new__(cls)
        p.coeffs = coeffs
        p.field = field
        return p

    @classmethod
    def x(cls, field=QQ) -> Poly:
        return cls._raw((field.zero, field.one), field)

    @classmethod
    def constant(cls, c, field=QQ) -> Poly:
        return cls((c,), field)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _lift(self, other) -> tuple:
        if isinstance(other, Poly):
            return other.coeffs
        return K.trim((self.field(other),))

    def __add__(self, other):
        return Poly._raw(K.poly_add(self.coeffs, self._lift(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return Poly._raw(K.poly_sub(self.coeffs, self._lift(other)), self.field)

    def __rsub__(self, other):
        return Poly._raw(K.poly_sub(self._lift(other), self.coeffs), self.field)

    def __neg__(self):
        return Poly._raw(K.poly_neg(self.coeffs), self.field)

    def __mul__(self, other):
        return Poly._raw(K.poly_mul(self.coeffs, self._lift(other)), self.field)

    __rmul__ = __mul__

    def __divmod__(self, other):
        q, r = K.poly_divmod(self.coeffs, self._lift(other))
        return Poly._raw(q, self.field), Poly._raw(r, self.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int):
        out = Poly._raw((self.field.one,), self.field)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, value):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def monic(self) -> Poly:
        return Poly._raw(K.poly_monic(self.coeffs), self.field)

    def gcd(self, other: Poly) -> Poly:
        return Poly._raw(K.poly_gcd(self.coeffs, other.coeffs), self.field)

    def __str__(self):
        return format_poly(self.coeffs, self.field)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _term(c_abs: str, k: int) -> str:
    if k == 0:
        return c_abs
    mono = "x" if k == 1 else f"x^{k}"
    if c_abs == "1":
        return mono
    return f"{c_abs}*{mono}"


def format_poly(coeffs, field) -> str:
    """Ascending-degree text such as ``1 - 3/2*x + x^3``."""
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        neg = field.is_negative(c)
        text = _term(field.format(-c if neg else c), k)
        if not parts:
            parts.append("-" + text if neg else text)
        else:
            parts.append((" - " if neg else " + ") + text)
    return "".join(parts) if parts else "0"
