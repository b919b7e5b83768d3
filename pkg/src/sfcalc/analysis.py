"""Realisability, distinguishing contexts and the axiom suite."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .circuit import (
    ADD,
    COADD,
    COCOPY,
    CODISCARD,
    COONE,
    COPY,
    COREG,
    COZERO,
    DISCARD,
    EMPTY,
    ID,
    ONE,
    REG,
    SYM,
    ZERO,
    Circuit,
    SortError,
    coscalar,
    scalar,
)
from .constructions import cap, cup, hat, ident, par, permutation, seq, vector_context
from .field import QQ
from .relation import AffineMap, AffineRelation, extract_affine_map, map_is_rational
from .semantics import dsem, witness

__all__ = [
    "PortPartition",
    "RealisabilityReport",
    "Context",
    "AxiomResult",
    "AxiomReport",
    "rewire",
    "rewire_circuit",
    "partitions",
    "realisable",
    "distinguishing_context",
    "axioms",
    "axiom_suite",
    "DEFAULT_SAMPLES",
]


@dataclass(frozen=True)
class PortPartition:
    """Ports are numbered left first (0..n-1), then right (n..n+m-1)."""

    ports: int
    inputs: frozenset

    @classmethod
    def standard(cls, n: int, m: int) -> PortPartition:
        return cls(n + m, frozenset(range(n)))

    @property
    def outputs(self) -> frozenset:
        return frozenset(range(self.ports)) - self.inputs

    @property
    def bitmask(self) -> int:
        return sum(1 << i for i in self.inputs)

    def order(self) -> list:
        return sorted(self.inputs) + sorted(self.outputs)

    def describe(self, n: int) -> str:
        name = lambda p: f"l{p + 1}" if p < n else f"r{p - n + 1}"  # noqa: E731
        ins = ", ".join(name(p) for p in sorted(self.inputs)) or "none"
        outs = ", ".join(name(p) for p in sorted(self.outputs)) or "none"
        return f"inputs {{{ins}}}, outputs {{{outs}}}"


def partitions(n: int, m: int, forced=()):
    """All-left-inputs first, then every subset by increasing bitmask."""
    w = n + m
    first = PortPartition.standard(n, m)
    forced = frozenset(forced)
    if forced <= first.inputs:
        yield first
    for mask in range(1 << w):
        ins = frozenset(i for i in range(w) if mask >> i & 1)
        if ins == first.inputs or not forced <= ins:
            continue
        yield PortPartition(w, ins)


def rewire(G: AffineRelation, P: PortPartition) -> AffineRelation:
    if P.ports != G.width:
        raise ValueError(f"partition over {P.ports} ports for a relation with {G.width}")
    return G.permute(P.order(), len(P.inputs))


def rewire_circuit(c: Circuit, P: PortPartition) -> Circuit:
    """Bend ports with cups and caps so the inputs of ``P`` face left."""
    n, m = c.sort
    if P.ports != n + m:
        raise ValueError(f"partition over {P.ports} ports for sort {c.sort}")
    li = [p for p in range(n) if p in P.inputs]
    lo = [p for p in range(n) if p not in P.inputs]
    ri = [p for p in range(n, n + m) if p in P.inputs]
    ro = [p for p in range(n, n + m) if p not in P.inputs]
    k = len(lo)
    # wires after the cups: li, ri, then (a_j, b_j) per bent left output
    pos = {("in", p): i for i, p in enumerate(li + ri)}
    base = len(li) + len(ri)
    for j in range(k):
        pos[("a", j)] = base + 2 * j
        pos[("b", j)] = base + 2 * j + 1
    # target layout: c's left ports, then ri wires, then b_j
    target = []
    for p in range(n):
        target.append(("in", p) if p in P.inputs else ("a", lo.index(p)))
    target += [("in", p) for p in ri] + [("b", j) for j in range(k)]
    perm1 = [0] * len(target)
    for t, key in enumerate(target):
        perm1[pos[key]] = t
    stage1 = seq(par(ident(base), *[cup()] * k), permutation(perm1))
    body = par(c, ident(len(ri) + k))
    # after body: c's right ports (n..n+m-1), ri wires, b_j
    cur = [("r", p) for p in range(n, n + m)] + [("in", p) for p in ri] + [("b", j) for j in range(k)]
    final = []
    for p in ri:
        final += [("r", p), ("in", p)]
    final += [("b", j) for j in range(k)] + [("r", p) for p in ro]
    perm2 = [final.index(key) for key in cur]
    stage2 = seq(permutation(perm2), par(*[cap()] * len(ri), ident(k + len(ro))))
    return seq(stage1, body, stage2)


@dataclass
class RealisabilityReport:
    realisable: bool
    witness_partition: PortPartition | None
    affine_map: AffineMap | None
    hat_agrees: bool
    hat_partition: PortPartition | None = None
    n: int = 0
    m: int = 0

    def to_dict(self) -> dict:
        P = self.witness_partition
        return {
            "realisable": self.realisable,
            "partition": None if P is None else P.bitmask,
            "inputs": None if P is None else sorted(P.inputs),
            "map": None if self.affine_map is None else self.affine_map.to_dict(),
            "hat_agrees": self.hat_agrees,
        }

    def __str__(self):
        if not self.realisable:
            verdict = "not realisable"
            lines = [verdict]
        else:
            lines = ["realisable", "  partition: " + self.witness_partition.describe(self.n)]
            lines.append(f"  bitmask: {self.witness_partition.bitmask}")
            for i, (row, b) in enumerate(zip(self.affine_map.A, self.affine_map.b)):
                lines.append(f"  out{i + 1} = [{', '.join(str(a) for a in row)}] . in + {b}")
        lines.append(f"  hat criterion agrees: {'yes' if self.hat_agrees else 'no'}")
        return "\n".join(lines)


def _rational_map(G: AffineRelation, P: PortPartition):
    f = extract_affine_map(rewire(G, P))
    if f is not None and map_is_rational(f):
        return f
    return None


def realisable(c: Circuit, cap_ports: int = 12, field=QQ) -> RealisabilityReport:
    """Search port partitions for one that makes ``c`` a rational affine map,
    and check the verdict against the hat construction."""
    n, m = c.sort
    if n + m > cap_ports:
        raise ValueError(f"{n + m} ports exceeds the cap of {cap_ports}")
    G = dsem(c, field)
    found, fmap = None, None
    for P in partitions(n, m):
        f = _rational_map(G, P)
        if f is not None:
            found, fmap = P, f
            break
    H = dsem(hat(c), field)
    hat_found = None
    for P in partitions(n + 1, m, forced=(0,)):
        f = _rational_map(H, P)
        if f is not None and f.is_linear():
            hat_found = P
            break
    return RealisabilityReport(
        found is not None, found, fmap, (found is None) == (hat_found is None), hat_found, n, m
    )


@dataclass(frozen=True)
class Context:
    """Ground context ``c_u ; [-] ; c_v``."""

    c_u: Circuit
    c_v: Circuit

    def apply(self, c: Circuit) -> Circuit:
        return seq(self.c_u, c, self.c_v)

    def to_sfc(self) -> str:
        return f"# left plug\n{self.c_u}\n# right plug\n{self.c_v}\n"


def distinguishing_context(c: Circuit, d: Circuit, field=QQ) -> Context | None:
    w = witness(c, d, field)
    if w is None:
        return None
    c_u, c_v = vector_context(*w)
    return Context(c_u, c_v)


# axioms


DEFAULT_SAMPLES = ("1", "-1", "2", "1/2", "3")


@dataclass(frozen=True)
class AxiomResult:
    name: str
    params: tuple
    passed: bool

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name} [{', '.join(str(p) for p in self.params)}]"


@dataclass
class AxiomReport:
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {r.label: r.passed for r in self.results}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def __str__(self):
        width = max(len(r.label) for r in self.results)
        lines = [f"{r.label.ljust(width)}  {'pass' if r.passed else 'FAIL'}" for r in self.results]
        lines.append(f"{sum(r.passed for r in self.results)}/{len(self.results)} axioms hold")
        return "\n".join(lines)


def _fixed_axioms():
    mid = par(ID, SYM, ID)
    A = [
        ("∘-as", seq(par(ADD, ID), ADD), seq(par(ID, ADD), ADD)),
        ("∘-co", seq(SYM, ADD), ADD),
        ("∘-unl", seq(par(ZERO, ID), ADD), ID),
        ("∘-coas", seq(COADD, par(COADD, ID)), seq(COADD, par(ID, COADD))),
        ("∘-coco", seq(COADD, SYM), COADD),
        ("∘-counl", seq(COADD, par(COZERO, ID)), ID),
        ("•-coas", seq(COPY, par(COPY, ID)), seq(COPY, par(ID, COPY))),
        ("•-coco", seq(COPY, SYM), COPY),
        ("•-counl", seq(COPY, par(DISCARD, ID)), ID),
        ("•-as", seq(par(COCOPY, ID), COCOPY), seq(par(ID, COCOPY), COCOPY)),
        ("•-co", seq(SYM, COCOPY), COCOPY),
        ("•-unl", seq(par(CODISCARD, ID), COCOPY), ID),
        ("∘•-bi", seq(ADD, COPY), seq(par(COPY, COPY), mid, par(ADD, ADD))),
        ("∘•-biun", seq(ZERO, COPY), par(ZERO, ZERO)),
        ("•∘-biun", seq(ADD, DISCARD), par(DISCARD, DISCARD)),
        ("∘•-bo", seq(ZERO, DISCARD), EMPTY),
        ("•-fr1", seq(par(COPY, ID), par(ID, COCOPY)), seq(COCOPY, COPY)),
        ("•-fr2", seq(COCOPY, COPY), seq(par(ID, COPY), par(COCOPY, ID))),
        ("•-sp", seq(COPY, COCOPY), ID),
        ("•-bo", seq(CODISCARD, DISCARD), EMPTY),
        ("∘-fr1", seq(par(COADD, ID), par(ID, ADD)), seq(ADD, COADD)),
        ("∘-fr2", seq(ADD, COADD), seq(par(ID, COADD), par(ADD, ID))),
        ("∘-sp", seq(COADD, ADD), ID),
        ("∘-bo", seq(ZERO, COZERO), EMPTY),
        ("1-dup", seq(ONE, COPY), par(ONE, ONE)),
        ("1-del", seq(ONE, DISCARD), EMPTY),
        ("∅", par(seq(ONE, COZERO), ID), par(seq(ONE, COZERO), seq(DISCARD, CODISCARD))),
        ("co1", COONE, seq(par(ONE, ID), cap())),
        ("coreg[x]", COREG, seq(par(ID, cup()), par(ID, REG, ID), par(cap(), ID))),
    ]
    # the register commutes with the black and white structure like a scalar
    A += [
        ("add[x]", seq(ADD, REG), seq(par(REG, REG), ADD)),
        ("zer[x]", seq(ZERO, REG), ZERO),
        ("dup[x]", seq(REG, COPY), seq(COPY, par(REG, REG))),
        ("del[x]", seq(REG, DISCARD), DISCARD),
    ]
    assert all(lhs.sort == rhs.sort for _, lhs, rhs in A), "ill-sorted axiom"
    return A


def axioms(samples=DEFAULT_SAMPLES, field=QQ):
    """Yield ``(name, params, lhs, rhs)`` for every axiom instance."""
    for name, lhs, rhs in _fixed_axioms():
        yield name, (), lhs, rhs
    rs = [field(s) for s in samples]
    for r in rs:
        R = scalar(r)
        yield "add", (r,), seq(ADD, R), seq(par(R, R), ADD)
        yield "zer", (r,), seq(ZERO, R), ZERO
        yield "dup", (r,), seq(R, COPY), seq(COPY, par(R, R))
        yield "del", (r,), seq(R, DISCARD), DISCARD
        yield "coreg", (r,), coscalar(r), seq(par(ID, cup()), par(ID, R, ID), par(cap(), ID))
        if r:
            yield "r-inv", (r,), seq(R, coscalar(r)), ID
            yield "r-coinv", (r,), ID, seq(coscalar(r), R)
    for r, s in itertools.product(rs, rs):
        yield "×", (r, s), seq(scalar(r), scalar(s)), scalar(r * s)
        yield "+", (r, s), seq(COPY, par(scalar(r), scalar(s)), ADD), scalar(r + s)
    yield "0", (field.zero,), scalar(field.zero), seq(DISCARD, ZERO)


def axiom_suite(samples=DEFAULT_SAMPLES, field=QQ) -> AxiomReport:
    """Check every axiom instance denotationally."""
    results = []
    for name, params, lhs, rhs in axioms(samples, field):
        if lhs.sort != rhs.sort:
            raise SortError(f"axiom {name} is ill-sorted: {lhs.sort} vs {rhs.sort}", rhs, lhs.sort.n, rhs.sort.n)
        results.append(AxiomResult(name, params, dsem(lhs, field) == dsem(rhs, field)))
    return AxiomReport(results)
