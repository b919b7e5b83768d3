"""Clocked operational semantics.

A circuit is flattened into a netlist of gates joined by numbered wires.
One tick is a linear system over the wire values and the register
successors, with boundary values, stored register contents and the
indicator ``[t == 0]`` (read by ``one``/``coone``) as parameters. The system
is reduced once per netlist so that each tick only substitutes parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import kernels as K
from .circuit import Circuit, Gen, Par, Seq, SortError
from .field import QQ
from .frac import Frac
from .laurent import LaurentWindow, laurent_degree, laurent_expand
from .relation import AffineRelation, extract_affine_map, rel_from_constraints, rel_member
from .semantics import dsem

__all__ = [
    "Gate",
    "Netlist",
    "NetState",
    "Infeasible",
    "Unique",
    "Ambiguous",
    "Trajectory",
    "Stuck",
    "AmbiguousAt",
    "RunError",
    "compile",
    "step",
    "step_function",
    "initial_reachable",
    "reachable_step",
    "run",
    "run_function",
    "kappa_iota",
    "check_agreement",
    "observes_infinite",
    "format_trajectory",
    "parse_trajectory",
]

_MIRRORED = {"cocopy", "codiscard", "coadd", "cozero", "coscalar", "coreg", "coone"}


@dataclass(frozen=True)
class Gate:
    kind: str
    param: object
    ins: tuple
    outs: tuple
    slot: int | None = None


@dataclass
class Netlist:
    n: int
    m: int
    wires: int
    left: tuple
    right: tuple
    gates: tuple
    registers: int
    _proj: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def to_dot(self, name: str = "circuit") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for i in range(self.n):
            lines.append(f'  L{i} [shape=point, xlabel="l{i + 1}"];')
        for j in range(self.m):
            lines.append(f'  R{j} [shape=point, xlabel="r{j + 1}"];')
        for g, gate in enumerate(self.gates):
            label = gate.kind if gate.param is None else f"{gate.kind}({gate.param})"
            if gate.slot is not None:
                label += f" [s{gate.slot}]"
            lines.append(f'  g{g} [shape=box, label="{label}"];')
        src = {w: f"L{i}" for i, w in enumerate(self.left)}
        dst: dict = {}
        for j, w in enumerate(self.right):
            dst.setdefault(w, []).append(f"R{j}")
        for g, gate in enumerate(self.gates):
            for w in gate.outs:
                src[w] = f"g{g}"
            for w in gate.ins:
                dst.setdefault(w, []).append(f"g{g}")
        for w in range(self.wires):
            for d in dst.get(w, []):
                lines.append(f'  {src.get(w, "?")} -> {d} [label="w{w}"];')
        lines.append("}")
        return "\n".join(lines)


def compile(c: Circuit) -> Netlist:
    """Flatten ``c``; ``Seq`` shares the wires between its two halves."""
    gates = []
    counter = [0, 0]

    def fresh(k):
        out = tuple(range(counter[0], counter[0] + k))
        counter[0] += k
        return out

    def build(node, ins):
        if isinstance(node, Gen):
            if node.kind == "empty":
                return ()
            outs = fresh(node.sort.m)
            slot = None
            if node.kind in ("reg", "coreg"):
                slot = counter[1]
                counter[1] += 1
            gates.append(Gate(node.kind, node.param, tuple(ins), outs, slot))
            return outs
        if isinstance(node, Seq):
            return build(node.right, build(node.left, ins))
        k = node.top.sort.n
        return build(node.top, ins[:k]) + build(node.bottom, ins[k:])

    left = fresh(c.sort.n)
    right = build(c, left)
    return Netlist(c.sort.n, c.sort.m, counter[0], left, right, tuple(gates), counter[1])


def _gate_equations(gate: Gate, field):
    """Fig. 2 constraints as lists of (key, coefficient) summing to zero."""
    one, neg = field.one, -field.one
    a, b = gate.ins, gate.outs
    if gate.kind in _MIRRORED:
        a, b = b, a
    kind = gate.kind[2:] if gate.kind in _MIRRORED else gate.kind
    w = lambda i: ("w", i)  # noqa: E731
    if kind == "copy":
        return [[(w(a[0]), one), (w(b[0]), neg)], [(w(a[0]), one), (w(b[1]), neg)]]
    if kind == "discard":
        return []
    if kind == "add":
        return [[(w(a[0]), one), (w(a[1]), one), (w(b[0]), neg)]]
    if kind == "zero":
        return [[(w(b[0]), one)]]
    if kind == "scalar":
        return [[(w(a[0]), field(gate.param)), (w(b[0]), neg)]]
    if kind == "reg":
        return [[(w(b[0]), one), (("s", gate.slot), neg)], [(("n", gate.slot), one), (w(a[0]), neg)]]
    if kind == "one":
        return [[(w(b[0]), one), (("one",), neg)]]
    if kind == "id":
        return [[(w(a[0]), one), (w(b[0]), neg)]]
    if kind == "sym":
        return [[(w(a[0]), one), (w(b[1]), neg)], [(w(a[1]), one), (w(b[0]), neg)]]
    raise ValueError(f"unknown gate {gate.kind!r}")


class _Projection:
    """The tick system reduced to a relation between stored registers S and
    unknowns O (register successors, plus right wires in function mode),
    with parameters P (boundary values and the clock indicator)."""

    def __init__(self, net: Netlist, fieldk, function_mode: bool):
        R = net.registers
        self.field = fieldk
        self.R = R
        boundary_out = set(net.right) if function_mode else set()
        params_w = list(net.left) + ([] if function_mode else list(net.right))
        fixed = set(params_w) | boundary_out
        elim = [w for w in range(net.wires) if w not in fixed]
        cols: dict = {}
        for wi in elim:
            cols[("w", wi)] = len(cols)
        self.s0 = len(cols)
        for s in range(R):
            cols[("s", s)] = len(cols)
        self.o0 = len(cols)
        for s in range(R):
            cols[("n", s)] = len(cols)
        if function_mode:
            for wi in net.right:
                cols.setdefault(("w", wi), len(cols))
        self.p0 = len(cols)
        # generators always allocate fresh outputs, so no wire is both a
        # left and a right boundary
        for wi in params_w:
            cols.setdefault(("w", wi), len(cols))
        self.param_keys = [("w", wi) for wi in params_w]
        cols[("one",)] = len(cols)
        self.ncols = len(cols)
        self.no = self.p0 - self.o0
        zero = fieldk.zero
        rows = []
        for gate in net.gates:
            for eq in _gate_equations(gate, fieldk):
                row = [zero] * self.ncols
                for key, coef in eq:
                    j = cols[key]
                    row[j] = row[j] + coef
                rows.append(row)
        rows, piv = K.rref(rows, self.ncols)
        self.cols = cols
        self.trans = [r for r, p in zip(rows, piv) if self.s0 <= p < self.p0]
        self.conds = [r for r, p in zip(rows, piv) if p >= self.p0]

    def param_vector(self, left, right, clock):
        vals = {}
        net_vals = list(left) + list(right)
        for key, v in zip(self.param_keys, net_vals):
            vals[key] = self.field(v) if not _is_elem(v, self.field) else v
        out = [self.field.zero] * (self.ncols - self.p0)
        for key, v in vals.items():
            out[self.cols[key] - self.p0] = v
        out[-1] = self.field.one if clock == 0 else self.field.zero
        return out

    def instantiate(self, p):
        """Rows over (S, O) with constant term, or None if P violates a
        condition."""
        for r in self.conds:
            if _dot(r[self.p0 :], p, self.field.zero):
                return None
        out = []
        for r in self.trans:
            c = _dot(r[self.p0 :], p, self.field.zero)
            out.append(list(r[self.s0 : self.p0]) + [-c])
        return out


def _is_elem(v, fieldk) -> bool:
    return type(v) is type(fieldk.zero)


def _dot(row, vec, zero):
    acc = zero
    for a, b in zip(row, vec):
        if a and b:
            acc = acc + a * b
    return acc


def _projection(net: Netlist, fieldk, function_mode: bool) -> _Projection:
    key = (fieldk, function_mode)
    if key not in net._proj:
        net._proj[key] = _Projection(net, fieldk, function_mode)
    return net._proj[key]


def _solve_affine(rows, width, zero):
    """RREF of an affine system over the base field; None if inconsistent."""
    rows, piv = K.rref([list(r) for r in rows], width + 1)
    if piv and piv[-1] == width:
        return None
    return rows, piv


# states and single steps


@dataclass(frozen=True)
class NetState:
    netlist: Netlist
    registers: tuple
    clock: int

    @classmethod
    def initial(cls, net: Netlist, clock: int = 0, fieldk=QQ) -> NetState:
        return cls(net, (fieldk.zero,) * net.registers, clock)


@dataclass(frozen=True)
class Infeasible:
    ok = False


@dataclass(frozen=True)
class Unique:
    registers: tuple
    right: tuple = ()
    ok = True


@dataclass(frozen=True)
class Ambiguous:
    space: AffineRelation
    ok = True


def _classify(system, R, no, fieldk):
    """Given rows over O with constant, decide the successor set."""
    solved = _solve_affine(system, no, fieldk.zero)
    if solved is None:
        return Infeasible()
    rows, piv = solved
    if len(piv) == no:
        vals = [fieldk.zero] * no
        for r, p in zip(rows, piv):
            vals[p] = r[no]
        return Unique(tuple(vals[:R]), tuple(vals[R:]))
    space = rel_from_constraints(
        0, no, [([Frac.const(a, fieldk) for a in r[:no]], Frac.const(r[no], fieldk)) for r in rows], fieldk
    )
    return Ambiguous(space)


def _substitute(system, stored, R, zero):
    """Plug known stored values into rows over (S, O)."""
    out = []
    for r in system:
        c = r[-1]
        for a, s in zip(r[:R], stored):
            if a and s:
                c = c - a * s
        out.append(r[R:-1] + [c])
    return out


def step(s: NetState, left, right, fieldk=QQ):
    """One tick from state ``s`` with both boundaries given."""
    net = s.netlist
    if len(left) != net.n or len(right) != net.m:
        raise ValueError(f"boundary of sort ({len(left)},{len(right)}) for a ({net.n},{net.m}) circuit")
    proj = _projection(net, fieldk, False)
    system = proj.instantiate(proj.param_vector(left, right, s.clock))
    if system is None:
        return Infeasible()
    return _classify(_substitute(system, s.registers, net.registers, fieldk.zero), net.registers, proj.no, fieldk)


# trajectories and runs


@dataclass
class Trajectory:
    start: int
    steps: list
    states: list | None = None
    ok = True

    @property
    def stop(self) -> int:
        return self.start + len(self.steps)

    def at(self, t: int):
        j = t - self.start
        if 0 <= j < len(self.steps):
            return self.steps[j]
        return None

    def lefts(self, i: int) -> list:
        return [s[0][i] for s in self.steps]

    def rights(self, j: int) -> list:
        return [s[1][j] for s in self.steps]

    def __str__(self):
        return format_trajectory(self)


@dataclass
class Stuck:
    clock: int
    prefix: Trajectory
    ok = False

    def __str__(self):
        return f"stuck at t = {self.clock}"


@dataclass
class AmbiguousAt:
    clock: int
    space: AffineRelation
    prefix: Trajectory
    ok = False

    def __str__(self):
        return f"ambiguous register successor at t = {self.clock}"


class RunError(ValueError):
    pass


def _fmt(v) -> str:
    return str(v)


def format_trajectory(tr: Trajectory) -> str:
    lines = []
    for k, (l, r) in enumerate(tr.steps):
        lines.append(f"{tr.start + k}: [{', '.join(map(_fmt, l))}] | [{', '.join(map(_fmt, r))}]")
    return "\n".join(lines)


def parse_trajectory(text: str, fieldk=QQ) -> Trajectory:
    """Read the ``t: [lefts] | [rights]`` format; clocks must be consecutive."""
    steps = []
    start = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            t_text, body = line.split(":", 1)
            l_text, r_text = body.split("|")
            t = int(t_text)
            vals = []
            for part in (l_text, r_text):
                part = part.strip()
                if not (part.startswith("[") and part.endswith("]")):
                    raise ValueError("expected [...]")
                inner = part[1:-1].strip()
                vals.append(tuple(fieldk.parse(x) for x in inner.split(",")) if inner else ())
        except ValueError as exc:
            raise ValueError(f"line {lineno}: cannot read trajectory entry {raw!r}") from exc
        if start is None:
            start = t
        elif t != start + len(steps):
            raise ValueError(f"line {lineno}: expected clock {start + len(steps)}, got {t}")
        steps.append((vals[0], vals[1]))
    return Trajectory(0 if start is None else start, steps)


def _as_net(c) -> Netlist:
    return c if isinstance(c, Netlist) else compile(c)


def run(c, start: int, inputs, fieldk=QQ, existential: bool = False):
    """Iterate ``step`` from the initial state at clock ``start``.

    ``inputs`` lists (left, right) boundary tuples, one per tick. In the
    default mode each tick must have a unique register successor. With
    ``existential=True`` the set of reachable register states is tracked as
    an affine subspace instead, so the run only fails when it is empty.
    """
    if start > 0:
        raise ValueError("runs start at a clock t <= 0")
    net = _as_net(c)
    if existential:
        return _run_existential(net, start, inputs, fieldk)
    state = NetState.initial(net, start, fieldk)
    done = Trajectory(start, [], [state.registers])
    for k, (left, right) in enumerate(inputs):
        res = step(state, left, right, fieldk)
        t = start + k
        if isinstance(res, Infeasible):
            return Stuck(t, done)
        if isinstance(res, Ambiguous):
            return AmbiguousAt(t, res.space, done)
        done.steps.append((tuple(left), tuple(right)))
        state = NetState(net, res.registers, t + 1)
        done.states.append(res.registers)
    return done


def initial_reachable(net: Netlist, fieldk=QQ) -> list:
    """Rows describing the single all-zero register state."""
    R = net.registers
    zero, one = fieldk.zero, fieldk.one
    return [[one if j == i else zero for j in range(R)] + [zero] for i in range(R)]


def reachable_step(net: Netlist, current: list, left, right, clock: int, fieldk=QQ):
    """Successor register states of every state in the affine set
    ``current`` (rows over k^R with constant), or None if there are none."""
    R = net.registers
    zero = fieldk.zero
    proj = _projection(net, fieldk, False)
    system = proj.instantiate(proj.param_vector(left, right, clock))
    if system is None:
        return None
    stacked = [r[:R] + [zero] * proj.no + [r[R]] for r in current] + system
    solved = _solve_affine(stacked, R + proj.no, zero)
    if solved is None:
        return None
    rows, piv = solved
    return [r[R:] for r, p in zip(rows, piv) if p >= R]


def _run_existential(net: Netlist, start: int, inputs, fieldk):
    current = initial_reachable(net, fieldk)
    done = Trajectory(start, [])
    for k, (left, right) in enumerate(inputs):
        t = start + k
        current = reachable_step(net, current, left, right, t, fieldk)
        if current is None:
            return Stuck(t, done)
        done.steps.append((tuple(left), tuple(right)))
    return done


def step_function(s: NetState, left, fieldk=QQ):
    """One tick with only the left boundary given; a ``Unique`` result also
    carries the right boundary values."""
    net = s.netlist
    if len(left) != net.n:
        raise ValueError(f"{len(left)} left values for a circuit with {net.n} left ports")
    proj = _projection(net, fieldk, True)
    system = proj.instantiate(proj.param_vector(left, (), s.clock))
    if system is None:
        return Infeasible()
    return _classify(_substitute(system, s.registers, net.registers, fieldk.zero), net.registers, proj.no, fieldk)


def run_function(c: Circuit, inputs, horizon: int, fieldk=QQ):
    """Output windows of a functional circuit driven by input windows.

    Simulation starts at ``min(0, earliest input start)`` and covers
    ``horizon`` ticks; only the left boundary is fixed.
    """
    if extract_affine_map(dsem(c, fieldk)) is None:
        raise RunError("circuit is not functional from left to right")
    inputs = list(inputs)
    if len(inputs) != c.sort.n:
        raise ValueError(f"expected {c.sort.n} input windows, got {len(inputs)}")
    net = compile(c)
    start = min([0] + [w.start for w in inputs])
    state = NetState.initial(net, start, fieldk)
    outs = [[] for _ in range(c.sort.m)]
    for k in range(horizon):
        t = start + k
        left = [fieldk(w[t]) if not _is_elem(w[t], fieldk) else w[t] for w in inputs]
        res = step_function(state, left, fieldk)
        if isinstance(res, Infeasible):
            raise RunError(f"no transition at t = {t}")
        if isinstance(res, Ambiguous):
            raise RunError(f"ambiguous transition at t = {t}")
        state = NetState(net, res.registers, t + 1)
        for j, v in enumerate(res.right):
            outs[j].append(v)
    return [LaurentWindow(start, tuple(o)) for o in outs]


def kappa_iota(vectors, lo: int, hi: int, fieldk=QQ) -> Trajectory:
    """Expand each component as a Laurent series and regroup by clock."""
    u, v = vectors
    lw = [laurent_expand(_frac(p, fieldk), lo, hi) for p in u]
    rw = [laurent_expand(_frac(q, fieldk), lo, hi) for q in v]
    steps = []
    for t in range(lo, hi):
        steps.append((tuple(w[t] for w in lw), tuple(w[t] for w in rw)))
    return Trajectory(lo, steps)


def _frac(p, fieldk) -> Frac:
    if isinstance(p, Frac):
        return p
    if isinstance(p, str):
        return Frac.parse(p, fieldk)
    return Frac.const(p, fieldk)


def agreement_start(c: Circuit, u, v, fieldk=QQ) -> int:
    """Clock from which a run can realise the expansion of ``(u, v)``: the
    earliest Laurent degree (at most 0), less one tick per register."""
    degrees = [laurent_degree(_frac(p, fieldk)) for p in list(u) + list(v)]
    lo = min([0] + [d for d in degrees if d is not None])
    return lo - compile(c).registers


def check_agreement(c: Circuit, sample, horizon: int, fieldk=QQ) -> bool:
    """True iff the expansion of a member of the denotation is a run."""
    u, v = sample
    if not rel_member(dsem(c, fieldk), [_frac(p, fieldk) for p in u], [_frac(q, fieldk) for q in v]):
        raise ValueError("sample is not in the denotation")
    start = agreement_start(c, u, v, fieldk)
    tau = kappa_iota((u, v), start, horizon, fieldk)
    return run(c, start, tau.steps, fieldk, existential=True).ok


def observes_infinite(c: Circuit, fieldk=QQ, horizon: int = 8, cross_check: bool = True) -> bool:
    """Whether a closed circuit admits an infinite computation.

    Decided by the denotation (identity on 0 versus empty). With
    ``cross_check`` a positive verdict is also replayed operationally from
    clock ``-(R+1)`` and must not get stuck.
    """
    if c.sort != (0, 0):
        raise SortError(f"observation needs a closed circuit, got sort {c.sort}", c, c.sort.n, c.sort.m)
    verdict = not dsem(c, fieldk).is_empty()
    if verdict and cross_check:
        net = compile(c)
        start = -(net.registers + 1)
        res = run(net, start, [((), ())] * (horizon - start), fieldk, existential=True)
        if not res.ok:
            raise AssertionError(f"denotation is id0 but the run is stuck at t = {res.clock}")
    return verdict
