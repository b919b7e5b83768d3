"""Laurent expansion of rational functions over finite index windows."""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels as K
from .frac import Frac


@dataclass(frozen=True)
class LaurentWindow:
    """Coefficients of a Laurent series on ``[start, start + len(coeffs))``.

    Indices before ``start`` are zero; indices past the end are unknown and
    read as zero only for convenience.
    """

    start: int
    coeffs: tuple

    @property
    def stop(self) -> int:
        return self.start + len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int):
        j = i - self.start
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return 0

    def degree(self):
        """First index with a nonzero coefficient, or None."""
        for j, c in enumerate(self.coeffs):
            if c:
                return self.start + j
        return None

    def __str__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"[{self.start}, {self.stop}): {body}"


def laurent_degree(p: Frac) -> int | None:
    """Index of the first nonzero Laurent coefficient (None for zero)."""
    if not p:
        return None
    return _low_zeros(p._n) - _low_zeros(p._d)


def _low_zeros(a: tuple) -> int:
    k = 0
    while k < len(a) and not a[k]:
        k += 1
    return k


def laurent_expand(p: Frac, lo: int, hi: int) -> LaurentWindow:
    if lo > hi:
        raise ValueError(f"empty window bounds reversed: [{lo}, {hi})")
    field = p.field
    zero = field.zero
    if not p:
        return LaurentWindow(lo, (zero,) * (hi - lo))
    # p = x^-k * num/den' with den'(0) != 0
    k = _low_zeros(p._d)
    den = p._d[k:]
    count = hi + k
    series = K.series_div(p._n, den, count) if count > 0 else ()
    out = []
    for i in range(lo, hi):
        j = i + k
        out.append(series[j] if j >= 0 else zero)
    return LaurentWindow(lo, tuple(out))


def is_rational(p: Frac) -> bool:
    """True iff p expands as a power series (denominator constant term != 0)."""
    return p.is_rational()


def convolve(a: LaurentWindow, b: LaurentWindow, lo: int, hi: int, zero=0) -> LaurentWindow:
    """Product of two windows on ``[lo, hi)``; exact wherever both inputs
    cover every contributing index."""
    out = []
    for i in range(lo, hi):
        acc = zero
        for j in range(a.start, a.stop):
            aj = a[j]
            if aj:
                acc = acc + aj * b[i - j]
        out.append(acc)
    return LaurentWindow(lo, tuple(out))
