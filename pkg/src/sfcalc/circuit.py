"""Circuit terms of the affine signal flow calculus.

A circuit is a tree of generators joined by sequential (``Seq``) and parallel
(``Par``) composition. Sorts are inferred bottom-up when a node is built, so
every ``Circuit`` object in existence is sortable.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

from .field import QQ

__all__ = [
    "Sort",
    "SortError",
    "Circuit",
    "Gen",
    "Seq",
    "Par",
    "GENERATOR_SORTS",
    "MIRROR",
    "COPY",
    "DISCARD",
    "ADD",
    "ZERO",
    "REG",
    "ONE",
    "COCOPY",
    "CODISCARD",
    "COADD",
    "COZERO",
    "COREG",
    "COONE",
    "ID",
    "SYM",
    "EMPTY",
    "scalar",
    "coscalar",
    "sort_of",
    "mirror",
]


class Sort(NamedTuple):
    n: int
    m: int

    def __str__(self):
        return f"({self.n},{self.m})"


GENERATOR_SORTS = {
    "copy": Sort(1, 2),
    "discard": Sort(1, 0),
    "add": Sort(2, 1),
    "zero": Sort(0, 1),
    "scalar": Sort(1, 1),
    "reg": Sort(1, 1),
    "one": Sort(0, 1),
    "cocopy": Sort(2, 1),
    "codiscard": Sort(0, 1),
    "coadd": Sort(1, 2),
    "cozero": Sort(1, 0),
    "coscalar": Sort(1, 1),
    "coreg": Sort(1, 1),
    "coone": Sort(1, 0),
    "id": Sort(1, 1),
    "sym": Sort(2, 2),
    "empty": Sort(0, 0),
}

_ROW1 = ("copy", "discard", "add", "zero", "scalar", "reg", "one")
MIRROR = {k: "co" + k for k in _ROW1}
MIRROR.update({"co" + k: k for k in _ROW1})
MIRROR.update({"id": "id", "sym": "sym", "empty": "empty"})


class SortError(ValueError):
    """Raised when a sequential composition joins mismatched arities."""

    def __init__(self, msg: str, subterm: Circuit | None = None, left: int | None = None, right: int | None = None):
        super().__init__(msg)
        self.subterm = subterm
        self.left = left
        self.right = right


class Circuit:
    __slots__ = ("sort", "_hash")

    @property
    def n(self) -> int:
        return self.sort.n

    @property
    def m(self) -> int:
        return self.sort.m

    def nodes(self) -> Iterator[Circuit]:
        """All nodes in pre-order, without recursion."""
        stack = [self]
        while stack:
            c = stack.pop()
            yield c
            if isinstance(c, Seq):
                stack.append(c.right)
                stack.append(c.left)
            elif isinstance(c, Par):
                stack.append(c.bottom)
                stack.append(c.top)

    def generators(self) -> Iterator[Gen]:
        return (c for c in self.nodes() if isinstance(c, Gen))

    def count(self, kind: str) -> int:
        return sum(1 for g in self.generators() if g.kind == kind)

    def size(self) -> int:
        return sum(1 for _ in self.generators())

    def __hash__(self):
        return self._hash

    def __str__(self):
        from .dsl import render

        return render(self)


class Gen(Circuit):
    """A generator or structural constant; ``param`` holds the scalar of
    ``scalar``/``coscalar``."""

    __slots__ = ("kind", "param")

    def __init__(self, kind: str, param=None):
        if kind not in GENERATOR_SORTS:
            raise ValueError(f"unknown generator {kind!r}")
        if (kind in ("scalar", "coscalar")) != (param is not None):
            raise ValueError(f"generator {kind!r} parameter mismatch")
        if param is not None and isinstance(param, (int, str)):
            param = QQ(param)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "param", param)
        object.__setattr__(self, "sort", GENERATOR_SORTS[kind])
        object.__setattr__(self, "_hash", hash((kind, param)))

    def __setattr__(self, name, value):
        raise AttributeError("circuits are immutable")

    __hash__ = Circuit.__hash__

    def __eq__(self, other):
        if not isinstance(other, Gen):
            return NotImplemented if not isinstance(other, Circuit) else False
        return self.kind == other.kind and self.param == other.param

    def __repr__(self):
        if self.param is None:
            return f"Gen({self.kind!r})"
        return f"Gen({self.kind!r}, {str(self.param)!r})"

    def __reduce__(self):
        return (Gen, (self.kind, self.param))


class Seq(Circuit):
    """Sequential composition ``left ; right``."""

    __slots__ = ("left", "right")

    def __init__(self, left: Circuit, right: Circuit):
        if left.sort.m != right.sort.n:
            raise SortError(
                f"cannot compose {left.sort} with {right.sort}: "
                f"right arity {left.sort.m} vs left arity {right.sort.n}",
                left=left.sort.m,
                right=right.sort.n,
            )
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "sort", Sort(left.sort.n, right.sort.m))
        object.__setattr__(self, "_hash", hash(("seq", left._hash, right._hash)))

    def __setattr__(self, name, value):
        raise AttributeError("circuits are immutable")

    __hash__ = Circuit.__hash__

    def __eq__(self, other):
        return _struct_eq(self, other)

    def __repr__(self):
        return f"Seq({self.left!r}, {self.right!r})"

    def __reduce__(self):
        return (Seq, (self.left, self.right))


class Par(Circuit):
    """Monoidal product ``top + bottom``."""

    __slots__ = ("top", "bottom")

    def __init__(self, top: Circuit, bottom: Circuit):
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)
        object.__setattr__(self, "sort", Sort(top.sort.n + bottom.sort.n, top.sort.m + bottom.sort.m))
        object.__setattr__(self, "_hash", hash(("par", top._hash, bottom._hash)))

    def __setattr__(self, name, value):
        raise AttributeError("circuits are immutable")

    __hash__ = Circuit.__hash__

    def __eq__(self, other):
        return _struct_eq(self, other)

    def __repr__(self):
        return f"Par({self.top!r}, {self.bottom!r})"

    def __reduce__(self):
        return (Par, (self.top, self.bottom))


def _struct_eq(a, b) -> bool:
    if not isinstance(b, Circuit):
        return NotImplemented
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x is y:
            continue
        if type(x) is not type(y) or x._hash != y._hash or x.sort != y.sort:
            return False
        if isinstance(x, Gen):
            if x.kind != y.kind or x.param != y.param:
                return False
        elif isinstance(x, Seq):
            stack.append((x.left, y.left))
            stack.append((x.right, y.right))
        else:
            stack.append((x.top, y.top))
            stack.append((x.bottom, y.bottom))
    return True


COPY = Gen("copy")
DISCARD = Gen("discard")
ADD = Gen("add")
ZERO = Gen("zero")
REG = Gen("reg")
ONE = Gen("one")
COCOPY = Gen("cocopy")
CODISCARD = Gen("codiscard")
COADD = Gen("coadd")
COZERO = Gen("cozero")
COREG = Gen("coreg")
COONE = Gen("coone")
ID = Gen("id")
SYM = Gen("sym")
EMPTY = Gen("empty")


def scalar(r) -> Gen:
    return Gen("scalar", r)


def coscalar(r) -> Gen:
    return Gen("coscalar", r)


def sort_of(c: Circuit) -> Sort:
    return c.sort


def mirror(c: Circuit) -> Circuit:
    """Reflect a circuit left-to-right: every generator becomes its mirror
    image and sequential order is reversed."""
    if isinstance(c, Gen):
        kind = MIRROR[c.kind]
        return Gen(kind, c.param) if c.param is not None else _CONST[kind]
    if isinstance(c, Seq):
        return Seq(mirror(c.right), mirror(c.left))
    return Par(mirror(c.top), mirror(c.bottom))


_CONST = {g.kind: g for g in (COPY, DISCARD, ADD, ZERO, REG, ONE, COCOPY, CODISCARD, COADD, COZERO, COREG, COONE, ID, SYM, EMPTY)}
