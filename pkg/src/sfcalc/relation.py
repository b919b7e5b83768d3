"""Affine relations over k(x) in canonical kernel form.

A relation of sort (n, m) is the solution set of ``A.(u, v) = b`` where the
columns of ``A`` are the n left coordinates followed by the m right ones.
The system is kept in reduced row-echelon form without zero rows, so two
relations are equal exactly when their row tuples are equal. The empty
relation is a separate tag (``rows is None``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import kernels as K
from .field import QQ
from .frac import Frac

__all__ = [
    "AffineRelation",
    "AffineMap",
    "ArityError",
    "rel_from_constraints",
    "rel_compose",
    "rel_tensor",
    "rel_equal",
    "rel_member",
    "rel_witness",
    "extract_affine_map",
    "map_is_rational",
]


class ArityError(ValueError):
    pass


def _pivot(row) -> int:
    for j, a in enumerate(row):
        if a:
            return j
    return len(row)


class AffineRelation:
    """Canonical affine relation. Build with :func:`rel_from_constraints`."""

    __slots__ = ("n", "m", "rows", "field")

    def __init__(self, n: int, m: int, rows, field=QQ):
        self.n = n
        self.m = m
        self.rows = rows
        self.field = field

    @classmethod
    def empty(cls, n: int, m: int, field=QQ) -> AffineRelation:
        return cls(n, m, None, field)

    @classmethod
    def full(cls, n: int, m: int, field=QQ) -> AffineRelation:
        return cls(n, m, (), field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> AffineRelation:
        z, o = Frac.zero(field), Frac.one(field)
        rows = []
        for i in range(n):
            row = [z] * (2 * n + 1)
            row[i] = o
            row[n + i] = -o
            rows.append(tuple(row))
        return cls(n, n, tuple(rows), field)

    @property
    def sort(self):
        return (self.n, self.m)

    @property
    def width(self) -> int:
        return self.n + self.m

    def is_empty(self) -> bool:
        return self.rows is None

    def pivots(self) -> list:
        return [_pivot(r) for r in self.rows]

    def dimension(self) -> int | None:
        """Affine dimension over k(x), or None when empty."""
        if self.rows is None:
            return None
        return self.width - len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, AffineRelation):
            return NotImplemented
        return self.n == other.n and self.m == other.m and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.m, self.rows))

    def __repr__(self):
        if self.rows is None:
            return f"AffineRelation({self.n}, {self.m}, empty)"
        return f"AffineRelation({self.n}, {self.m}, {len(self.rows)} rows)"

    def converse(self) -> AffineRelation:
        if self.rows is None:
            return AffineRelation.empty(self.m, self.n, self.field)
        n, w = self.n, self.width
        rows = [list(r[n:w]) + list(r[:n]) + [r[w]] for r in self.rows]
        return _canon(self.m, self.n, rows, self.field)

    def permute(self, order, n_left: int) -> AffineRelation:
        """Reorder ports: new port i is old port ``order[i]``; the first
        ``n_left`` new ports are left ports."""
        w = self.width
        if sorted(order) != list(range(w)) or not 0 <= n_left <= w:
            raise ArityError(f"bad port order {order} for sort {self.sort}")
        if self.rows is None:
            return AffineRelation.empty(n_left, w - n_left, self.field)
        rows = [[r[j] for j in order] + [r[w]] for r in self.rows]
        return _canon(n_left, w - n_left, rows, self.field)

    # text and json output

    def to_text(self) -> str:
        head = f"relation ({self.n},{self.m})"
        if self.rows is None:
            return f"{head}: empty"
        if not self.rows:
            return f"{head}: all of k(x)^{self.width}"
        names = [f"l{i + 1}" for i in range(self.n)] + [f"r{j + 1}" for j in range(self.m)]
        lines = []
        for row in self.rows:
            terms = []
            for a, name in zip(row, names):
                if not a:
                    continue
                terms.append(_term(a, name, first=not terms))
            lines.append((" ".join(terms), str(row[-1])))
        pad = max(len(lhs) for lhs, _ in lines)
        return "\n".join([head + ":"] + [f"  {lhs.ljust(pad)} = {rhs}" for lhs, rhs in lines])

    def to_dict(self) -> dict:
        return {
            "left": self.n,
            "right": self.m,
            "empty": self.rows is None,
            "rows": None if self.rows is None else [[str(a) for a in r] for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict, field=QQ) -> AffineRelation:
        n, m = d["left"], d["right"]
        if d["empty"]:
            return cls.empty(n, m, field)
        rows = [[Frac.parse(s, field) for s in r] for r in d["rows"]]
        return _canon(n, m, rows, field)


def _term(a: Frac, name: str, first: bool) -> str:
    neg = a.field.is_negative(a._n[-1])
    mag = -a if neg else a
    if mag == 1:
        text = name
    else:
        text = str(mag)
        if " " in text or "/" in text and not mag.is_constant():
            text = f"({text})"
        text = f"{text}·{name}"
    if first:
        return f"-{text}" if neg else text
    return f"{'-' if neg else '+'} {text}"


def _canon(n: int, m: int, rows, field) -> AffineRelation:
    w = n + m
    rows, piv = K.rref([list(r) for r in rows], w + 1)
    if piv and piv[-1] == w:
        return AffineRelation.empty(n, m, field)
    return AffineRelation(n, m, tuple(tuple(r) for r in rows), field)


def _coerce_entry(a, field) -> Frac:
    if isinstance(a, Frac):
        return a
    if isinstance(a, str):
        return Frac.parse(a, field)
    return Frac.const(a, field)


def rel_from_constraints(n: int, m: int, rows, field=QQ) -> AffineRelation:
    """Canonical relation from rows ``(coeffs, rhs)`` with ``len(coeffs) = n+m``."""
    full = []
    for coeffs, rhs in rows:
        if len(coeffs) != n + m:
            raise ArityError(f"constraint of width {len(coeffs)} for sort ({n},{m})")
        full.append([_coerce_entry(a, field) for a in coeffs] + [_coerce_entry(rhs, field)])
    return _canon(n, m, full, field)


def rel_compose(G: AffineRelation, H: AffineRelation) -> AffineRelation:
    """Relational composite ``G ; H``."""
    if G.m != H.n:
        raise ArityError(f"cannot compose ({G.n},{G.m}) with ({H.n},{H.m})")
    n, m, l = G.n, G.m, H.m
    field = G.field
    if G.rows is None or H.rows is None:
        return AffineRelation.empty(n, l, field)
    z = Frac.zero(field)
    # variables ordered (v, u, w) so that v is eliminated first
    stacked = []
    for r in G.rows:
        stacked.append(list(r[n : n + m]) + list(r[:n]) + [z] * l + [r[n + m]])
    for r in H.rows:
        stacked.append(list(r[:m]) + [z] * n + list(r[m : m + l]) + [r[m + l]])
    width = m + n + l
    rows, piv = K.rref(stacked, width + 1)
    if piv and piv[-1] == width:
        return AffineRelation.empty(n, l, field)
    kept = tuple(tuple(r[m:]) for r, p in zip(rows, piv) if p >= m)
    return AffineRelation(n, l, kept, field)


def rel_tensor(G: AffineRelation, H: AffineRelation) -> AffineRelation:
    """Monoidal product with columns (left1, left2, right1, right2)."""
    n1, m1, n2, m2 = G.n, G.m, H.n, H.m
    field = G.field
    if G.rows is None or H.rows is None:
        return AffineRelation.empty(n1 + n2, m1 + m2, field)
    z = Frac.zero(field)
    rows = []
    for r in G.rows:
        rows.append(tuple(r[:n1]) + (z,) * n2 + tuple(r[n1 : n1 + m1]) + (z,) * m2 + (r[-1],))
    for r in H.rows:
        rows.append((z,) * n1 + tuple(r[:n2]) + (z,) * m1 + tuple(r[n2 : n2 + m2]) + (r[-1],))
    # both blocks are already reduced and touch disjoint columns
    rows.sort(key=_pivot)
    return AffineRelation(n1 + n2, m1 + m2, tuple(rows), field)


def _check_same_sort(G: AffineRelation, H: AffineRelation):
    if (G.n, G.m) != (H.n, H.m):
        raise ArityError(f"sort mismatch: ({G.n},{G.m}) vs ({H.n},{H.m})")


def rel_equal(G: AffineRelation, H: AffineRelation) -> bool:
    _check_same_sort(G, H)
    return G.rows == H.rows


def _satisfies(row, point) -> bool:
    acc = row[-1] - row[-1]
    for a, p in zip(row, point):
        if a:
            acc = acc + a * p
    return acc == row[-1]


def rel_member(G: AffineRelation, u, v) -> bool:
    if len(u) != G.n or len(v) != G.m:
        raise ArityError(f"point of sort ({len(u)},{len(v)}) for relation ({G.n},{G.m})")
    if G.rows is None:
        return False
    point = [_coerce_entry(a, G.field) for a in list(u) + list(v)]
    return all(_satisfies(r, point) for r in G.rows)


def _sample_points(G: AffineRelation) -> list:
    """Particular solution (free variables 0), then that solution plus each
    free direction in column order."""
    w = G.width
    z, o = Frac.zero(G.field), Frac.one(G.field)
    piv = G.pivots()
    free = [j for j in range(w) if j not in set(piv)]

    def point(f):
        x = [z] * w
        if f is not None:
            x[f] = o
        for row, pc in zip(G.rows, piv):
            x[pc] = row[-1] - row[f] if f is not None else row[-1]
        return x

    return [point(None)] + [point(f) for f in free]


def rel_witness(G: AffineRelation, H: AffineRelation):
    """A point ``(u, v)`` in exactly one of G, H, or None if they are equal."""
    _check_same_sort(G, H)
    if G.rows == H.rows:
        return None
    for A, B in ((G, H), (H, G)):
        if A.rows is None:
            continue
        if B.rows is None:
            x = _sample_points(A)[0]
            return tuple(x[: A.n]), tuple(x[A.n :])
        for x in _sample_points(A):
            for row in B.rows:
                if not _satisfies(row, x):
                    return tuple(x[: A.n]), tuple(x[A.n :])
    raise AssertionError("distinct canonical forms with no separating point")


@dataclass(frozen=True)
class AffineMap:
    """``v = A.u + b`` with ``A`` an m x n grid of fractions."""

    A: tuple
    b: tuple

    @property
    def n(self) -> int:
        return len(self.A[0]) if self.A else 0

    @property
    def m(self) -> int:
        return len(self.b)

    def __call__(self, u):
        return tuple(sum((a * p for a, p in zip(row, u)), bi) for row, bi in zip(self.A, self.b))

    def is_linear(self) -> bool:
        return not any(self.b)

    def to_dict(self) -> dict:
        return {"A": [[str(a) for a in row] for row in self.A], "b": [str(c) for c in self.b]}

    def __str__(self):
        rows = []
        for i, (row, bi) in enumerate(zip(self.A, self.b)):
            rows.append(f"r{i + 1} = [{', '.join(str(a) for a in row)}] . l + {bi}")
        return "\n".join(rows) if rows else "(no outputs)"


def extract_affine_map(G: AffineRelation) -> AffineMap | None:
    """The map left -> right whose graph is G, if G is one."""
    if G.rows is None:
        return None
    n, m, w = G.n, G.m, G.width
    if len(G.rows) != m:
        return None
    rows = [list(r[n:w]) + list(r[:n]) + [r[w]] for r in G.rows]
    rows, piv = K.rref(rows, w + 1)
    if piv != list(range(m)):
        return None
    A = tuple(tuple(-a for a in r[m:w]) for r in rows)
    b = tuple(r[w] for r in rows)
    return AffineMap(A, b)


def map_is_rational(f: AffineMap) -> bool:
    return all(a.is_rational() for row in f.A for a in row) and all(c.is_rational() for c in f.b)
