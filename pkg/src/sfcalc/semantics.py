"""Denotational semantics: circuits to affine relations."""

from __future__ import annotations

from .circuit import Circuit, Gen, Seq, SortError
from .field import QQ
from .frac import Frac
from .relation import AffineRelation, rel_compose, rel_from_constraints, rel_tensor, rel_witness

__all__ = ["dsem", "equiv", "witness", "generator_relation"]


_CO = {"cocopy", "codiscard", "coadd", "cozero", "coscalar", "coreg", "coone"}


def generator_relation(kind: str, param=None, field=QQ) -> AffineRelation:
    """Table entry for a single generator."""
    if kind in _CO:
        return generator_relation(kind[2:], param, field).converse()
    o = Frac.one(field)
    z = Frac.zero(field)
    if kind == "copy":
        return rel_from_constraints(1, 2, [((o, -o, z), z), ((o, z, -o), z)], field)
    if kind == "discard":
        return AffineRelation.full(1, 0, field)
    if kind == "add":
        return rel_from_constraints(2, 1, [((o, o, -o), z)], field)
    if kind == "zero":
        return rel_from_constraints(0, 1, [((o,), z)], field)
    if kind == "one":
        return rel_from_constraints(0, 1, [((o,), o)], field)
    if kind == "scalar":
        r = Frac.const(field(param), field)
        return rel_from_constraints(1, 1, [((r, -o), z)], field)
    if kind == "reg":
        return rel_from_constraints(1, 1, [((Frac.x(field), -o), z)], field)
    if kind == "id":
        return AffineRelation.identity(1, field)
    if kind == "sym":
        return rel_from_constraints(2, 2, [((o, z, z, -o), z), ((z, o, -o, z), z)], field)
    if kind == "empty":
        return AffineRelation.full(0, 0, field)
    raise ValueError(f"unknown generator {kind!r}")


def dsem(c: Circuit, field=QQ) -> AffineRelation:
    """The affine relation denoted by ``c``, computed bottom-up."""
    memo: dict = {}
    stack = [(c, False)]
    while stack:
        node, ready = stack.pop()
        if node in memo:
            continue
        if isinstance(node, Gen):
            memo[node] = generator_relation(node.kind, node.param, field)
            continue
        a, b = (node.left, node.right) if isinstance(node, Seq) else (node.top, node.bottom)
        if ready:
            if isinstance(node, Seq):
                memo[node] = rel_compose(memo[a], memo[b])
            else:
                memo[node] = rel_tensor(memo[a], memo[b])
        else:
            stack.append((node, True))
            stack.append((b, False))
            stack.append((a, False))
    return memo[c]


def _same_sort(c: Circuit, d: Circuit):
    if c.sort != d.sort:
        raise SortError(f"sort mismatch: {c.sort} vs {d.sort}", d, c.sort.n, d.sort.n)


def equiv(c: Circuit, d: Circuit, field=QQ) -> bool:
    _same_sort(c, d)
    return dsem(c, field) == dsem(d, field)


def witness(c: Circuit, d: Circuit, field=QQ):
    """Boundary pair in exactly one of the two denotations, or None."""
    _same_sort(c, d)
    return rel_witness(dsem(c, field), dsem(d, field))
