"""Seeded random circuits, fractions and relations for property tests."""

from __future__ import annotations

import random

from .circuit import GENERATOR_SORTS, Circuit, Gen, Par, Seq
from .constructions import ident, par, permutation, seq, trace
from .field import QQ
from .frac import Frac
from .relation import AffineRelation, _sample_points, rel_from_constraints

__all__ = [
    "ALL_KINDS",
    "LINEAR_KINDS",
    "ASF_KINDS",
    "random_scalar",
    "random_frac",
    "random_circuit",
    "random_term",
    "random_asf",
    "random_member",
    "random_relation",
    "mutate_scalar",
]

ALL_KINDS = tuple(k for k in GENERATOR_SORTS if k != "empty")
LINEAR_KINDS = tuple(k for k in ALL_KINDS if k not in ("one", "coone"))
ASF_KINDS = ("copy", "discard", "add", "zero", "scalar", "reg", "one", "id", "sym")

_SCALARS = ("1", "-1", "2", "1/2", "3", "-2/3")


def random_scalar(rng: random.Random, field=QQ, nonzero: bool = False):
    if field is QQ:
        choices = [s for s in _SCALARS if not nonzero or s != "0"]
        return field(rng.choice(choices))
    return field.random(rng, nonzero=nonzero)


def _gen(rng: random.Random, kind: str, field) -> Gen:
    if kind in ("scalar", "coscalar"):
        return Gen(kind, random_scalar(rng, field, nonzero=True))
    return Gen(kind)


def random_frac(rng: random.Random, field=QQ, rational: bool = False, degree: int = 2) -> Frac:
    """Small random fraction; with ``rational`` the denominator has a
    nonzero constant term."""
    x = Frac.x(field)

    def poly(d):
        acc = Frac.zero(field)
        for k in range(d + 1):
            acc = acc + Frac.const(field.random(rng, 3), field) * x**k
        return acc

    num = poly(rng.randint(0, degree))
    shape = rng.randrange(4)
    if shape == 0:
        return num
    if shape == 1 or rational:
        return num / (1 + Frac.const(field.random(rng, 3), field) * x)
    if shape == 2:
        return num / x ** rng.randint(1, 2)
    return num / (x + x * x)


def _layer(rng, width, kinds, field, budget):
    """One parallel layer over ``width`` wires, plus occasional sources."""
    parts = []
    i = 0
    sources = [k for k in kinds if GENERATOR_SORTS[k].n == 0]
    while i < width or (sources and (width == 0 and not parts or rng.random() < 0.15) and len(parts) < width + 1):
        if sources and (i >= width or rng.random() < 0.15):
            kind = rng.choice(sources)
        else:
            fits = [k for k in kinds if 0 < GENERATOR_SORTS[k].n <= width - i]
            if not fits:
                break
            delays = [k for k in fits if k in ("reg", "coreg")]
            roll = rng.random()
            if delays and roll < 0.25:
                kind = rng.choice(delays)
            elif roll < 0.8:
                kind = rng.choice(fits)
            else:
                kind = "id"
        if kind in ("reg", "coreg"):
            if budget[0] == 0:
                kind = "id"
            else:
                budget[0] -= 1
        parts.append(_gen(rng, kind, field))
        i += GENERATOR_SORTS[kind].n
    parts += [Gen("id")] * (width - i)
    return par(*parts)


def random_circuit(
    rng: random.Random,
    kinds=ALL_KINDS,
    layers: int = 6,
    max_ports: int = 4,
    max_width: int = 4,
    max_regs: int = 5,
    field=QQ,
    sort=None,
    min_ports: int = 0,
) -> Circuit:
    """Layered random circuit with between ``min_ports`` and ``max_ports``
    boundary ports, or exactly the given ``sort`` when one is requested."""
    while True:
        n = sort[0] if sort else rng.randint(0, min(2, max_ports))
        budget = [max_regs]
        c = ident(n)
        w = n
        for _ in range(layers):
            lay = _layer(rng, w, kinds, field, budget)
            if lay.sort.m > max_width:
                continue
            c = seq(c, lay)
            w = lay.sort.m
            if rng.random() < 0.3 and w > 1:
                order = list(range(w))
                rng.shuffle(order)
                c = seq(c, permutation(order))
        if sort and c.sort != tuple(sort):
            continue
        if min_ports <= c.sort.n + c.sort.m <= max_ports:
            return c


def random_term(rng: random.Random, depth: int = 4, kinds=ALL_KINDS, field=QQ) -> Circuit:
    """Unconstrained random tree: ``Seq`` nodes are only built when the
    arities happen to meet, so every result is sortable."""
    if depth == 0 or rng.random() < 0.25:
        return _gen(rng, rng.choice(kinds + ("empty",)), field)
    a = random_term(rng, depth - 1, kinds, field)
    b = random_term(rng, depth - 1, kinds, field)
    if a.sort.m == b.sort.n and rng.random() < 0.6:
        return Seq(a, b)
    return Par(a, b)


def random_asf(rng: random.Random, layers: int = 4, max_ports: int = 4, max_regs: int = 5, field=QQ) -> Circuit:
    """Circuit built from row-1 generators and feedback by ``trace``."""
    while True:
        c = random_circuit(
            rng, ASF_KINDS, layers, max_ports=max_ports + 4, max_width=5, max_regs=max_regs - 1, field=field
        )
        regs = c.count("reg")
        while c.sort.n >= 1 and c.sort.m >= 1 and regs < max_regs and rng.random() < 0.7:
            # choose which right port feeds back to which left port
            m = c.sort.m
            j = rng.randrange(m)
            order = [j] + [k for k in range(m) if k != j]
            perm = [0] * m
            for pos, k in enumerate(order):
                perm[k] = pos
            c = trace(seq(c, permutation(perm)))
            regs += 1
        if c.sort.n + c.sort.m <= max_ports:
            return c


def random_member(rng: random.Random, G: AffineRelation, rational: bool = False):
    """Random point of a nonempty relation: particular solution plus random
    multiples of the free directions."""
    if G.is_empty():
        raise ValueError("empty relation has no members")
    pts = _sample_points(G)
    base = pts[0]
    point = list(base)
    for p in pts[1:]:
        k = random_frac(rng, G.field, rational=rational)
        point = [a + k * (b - c) for a, b, c in zip(point, p, base)]
    return tuple(point[: G.n]), tuple(point[G.n :])


def random_relation(rng: random.Random, n: int, m: int, field, rows: int | None = None) -> AffineRelation:
    """Relation with constant coefficients; about one in six is empty."""
    w = n + m
    k = rng.randint(0, w + 1) if rows is None else rows
    cons = []
    for _ in range(k):
        coeffs = [Frac.const(field.random(rng, 2), field) for _ in range(w)]
        rhs = Frac.const(field.random(rng, 2), field)
        cons.append((coeffs, rhs))
    return rel_from_constraints(n, m, cons, field)


def mutate_scalar(c: Circuit, rng: random.Random, field=QQ) -> Circuit:
    """Replace one scalar parameter; used to build near-miss pairs."""
    if isinstance(c, Gen):
        if c.kind in ("scalar", "coscalar"):
            return Gen(c.kind, c.param + 1)
        return c
    if isinstance(c, Seq):
        if rng.random() < 0.5:
            return Seq(mutate_scalar(c.left, rng, field), c.right)
        return Seq(c.left, mutate_scalar(c.right, rng, field))
    if rng.random() < 0.5:
        return Par(mutate_scalar(c.top, rng, field), c.bottom)
    return Par(c.top, mutate_scalar(c.bottom, rng, field))
