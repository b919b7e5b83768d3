"""Command-line front end: ``sfcalc <command> ...``.

Exit codes: 0 when the command succeeds or the checked property holds, 1
when the property fails, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .analysis import DEFAULT_SAMPLES, axiom_suite, distinguishing_context, realisable
from .circuit import SortError
from .dsl import CircuitSyntaxError, load
from .field import GF, QQ
from .frac import FracSyntaxError, parse_frac
from .laurent import laurent_expand
from .operational import (
    Ambiguous,
    AmbiguousAt,
    Infeasible,
    NetState,
    Stuck,
    Trajectory,
    compile,
    format_trajectory,
    parse_trajectory,
    run,
    step,
    step_function,
)
from .semantics import dsem, witness

OK, FAIL, USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _field(name: str):
    if name.upper() in ("QQ", "Q"):
        return QQ
    text = name.upper().removeprefix("GF").strip("()")
    try:
        return GF(int(text))
    except ValueError as exc:
        raise InputError(f"unknown field {name!r}; use QQ or GF(p)") from exc


def _load(path: str):
    try:
        return load(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except (CircuitSyntaxError, SortError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(args, text: str, data):
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(text)


def _vec(xs) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


# commands


def cmd_check(args) -> int:
    c = _load(args.file)
    _emit(args, f"sort {c.sort}", {"file": args.file, "left": c.sort.n, "right": c.sort.m})
    return OK


def cmd_dsem(args) -> int:
    fieldk = _field(args.field)
    G = dsem(_load(args.file), fieldk)
    _emit(args, G.to_text(), G.to_dict())
    return OK


def cmd_equiv(args) -> int:
    fieldk = _field(args.field)
    c, d = _load(args.a), _load(args.b)
    if c.sort != d.sort:
        raise InputError(f"sort mismatch: {c.sort} vs {d.sort}")
    w = witness(c, d, fieldk)
    if w is None:
        _emit(args, "equivalent", {"equivalent": True, "witness": None})
        return OK
    u, v = w
    text = f"not equivalent\nwitness: {_vec(u)} | {_vec(v)}"
    _emit(args, text, {"equivalent": False, "witness": {"left": [str(x) for x in u], "right": [str(x) for x in v]}})
    return FAIL


def _parse_spec(spec: str, fieldk):
    """``"1,0,0;2,2"``: ports separated by ``;``, ticks by ``,``."""
    spec = spec.strip()
    if not spec:
        return []
    ports = []
    for part in spec.split(";"):
        part = part.strip()
        try:
            ports.append([fieldk.parse(x) for x in part.split(",")] if part else [])
        except ValueError as exc:
            raise InputError(f"bad input stream {part!r}: {exc}") from exc
    return ports


def _ticks_from_ports(ports, n, m, steps, fieldk):
    zero = fieldk.zero
    at = lambda vals, k: vals[k] if k < len(vals) else zero  # noqa: E731
    if len(ports) == n:
        return [(tuple(at(p, k) for p in ports), None) for k in range(steps)]
    if len(ports) == n + m:
        return [(tuple(at(p, k) for p in ports[:n]), tuple(at(p, k) for p in ports[n:])) for k in range(steps)]
    raise InputError(f"{len(ports)} input streams; expected {n} (left only) or {n + m} (left and right)")


def _traj_dict(tr: Trajectory) -> list:
    return [
        {"t": tr.start + k, "left": [str(x) for x in l], "right": [str(x) for x in r]}
        for k, (l, r) in enumerate(tr.steps)
    ]


def cmd_sim(args) -> int:
    fieldk = _field(args.field)
    c = _load(args.file)
    n, m = c.sort
    if args.start > 0:
        raise InputError("--start must be <= 0")
    if args.inputs_file:
        try:
            with open(args.inputs_file, encoding="utf-8") as fh:
                given = parse_trajectory(fh.read(), fieldk)
        except OSError as exc:
            raise InputError(f"{args.inputs_file}: {exc.strerror}") from exc
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        if given.start != args.start and given.steps:
            raise InputError(f"input file starts at t = {given.start}, not {args.start}")
        ticks = [(tuple(l), tuple(r)) for l, r in given.steps][: args.steps]
        if any(len(l) != n or len(r) != m for l, r in ticks):
            raise InputError(f"input file entries must have {n} left and {m} right values")
    else:
        ticks = _ticks_from_ports(_parse_spec(args.inputs or "", fieldk), n, m, args.steps, fieldk)
    if ticks and ticks[0][1] is None:
        return _sim_function(args, c, ticks, fieldk)
    res = run(c, args.start, ticks, fieldk, existential=args.existential)
    return _report_run(args, res)


def _sim_function(args, c, ticks, fieldk) -> int:
    net = compile(c)
    state = NetState.initial(net, args.start, fieldk)
    tr = Trajectory(args.start, [], [state.registers])
    for k, (left, _) in enumerate(ticks):
        t = args.start + k
        res = step_function(state, left, fieldk)
        if isinstance(res, Infeasible):
            return _report_run(args, Stuck(t, tr))
        if isinstance(res, Ambiguous):
            return _report_run(args, AmbiguousAt(t, res.space, tr))
        tr.steps.append((tuple(left), res.right))
        tr.states.append(res.registers)
        state = NetState(net, res.registers, t + 1)
    return _report_run(args, tr)


def _report_run(args, res) -> int:
    prefix = res if isinstance(res, Trajectory) else res.prefix
    body = format_trajectory(prefix)
    if isinstance(res, Trajectory):
        status, code = "ok", OK
    elif isinstance(res, Stuck):
        status, code = f"stuck at t = {res.clock}", FAIL
    else:
        status, code = f"ambiguous at t = {res.clock}", FAIL
    text = f"{body}\n{status}" if body else status
    data = {"trajectory": _traj_dict(prefix), "status": status.split(" at ")[0]}
    if not isinstance(res, Trajectory):
        data["clock"] = res.clock
    _emit(args, text, data)
    return code


def cmd_step_repl(args) -> int:
    fieldk = _field(args.field)
    c = _load(args.file)
    net = compile(c)
    state = NetState.initial(net, args.start, fieldk)
    out = sys.stdout
    out.write(f"circuit of sort {c.sort} with {net.registers} register(s); clock t = {state.clock}\n")
    out.write("enter 'lefts | rights' or just 'lefts' (comma separated), 'quit' to stop\n")
    interactive = sys.stdin.isatty()
    while True:
        if interactive:
            out.write(f"t={state.clock}> ")
            out.flush()
        line = sys.stdin.readline()
        if not line:
            break
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("quit", "exit", "q"):
            break
        try:
            if "|" in line:
                l_text, r_text = line.split("|", 1)
                left = [fieldk.parse(x) for x in l_text.split(",") if x.strip()]
                right = [fieldk.parse(x) for x in r_text.split(",") if x.strip()]
                res = step(state, left, right, fieldk)
            else:
                left = [fieldk.parse(x) for x in line.split(",") if x.strip()]
                res = step_function(state, left, fieldk)
        except ValueError as exc:
            out.write(f"error: {exc}\n")
            continue
        if isinstance(res, Infeasible):
            out.write(f"t={state.clock}: infeasible; state unchanged\n")
            continue
        if isinstance(res, Ambiguous):
            out.write(f"t={state.clock}: ambiguous successor\n{res.space.to_text()}\n")
            continue
        shown = f" right {_vec(res.right)}" if res.right else ""
        out.write(f"t={state.clock}: ok{shown}; registers {_vec(res.registers)}\n")
        state = NetState(net, res.registers, state.clock + 1)
    return OK


def cmd_realisable(args) -> int:
    c = _load(args.file)
    try:
        rep = realisable(c, cap_ports=args.cap)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(args, str(rep), rep.to_dict())
    return OK if rep.realisable else FAIL


def cmd_distinguish(args) -> int:
    c, d = _load(args.a), _load(args.b)
    if c.sort != d.sort:
        raise InputError(f"sort mismatch: {c.sort} vs {d.sort}")
    ctx = distinguishing_context(c, d)
    if ctx is None:
        _emit(args, "# equivalent: no context distinguishes them", {"context": None})
        return FAIL
    _emit(args, ctx.to_sfc().rstrip("\n"), {"context": {"left": str(ctx.c_u), "right": str(ctx.c_v)}})
    return OK


def cmd_axioms(args) -> int:
    samples = [s.strip() for s in args.samples.split(",")] if args.samples else list(DEFAULT_SAMPLES)
    try:
        rep = axiom_suite(samples)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(args, str(rep), rep.to_dict())
    return OK if rep.passed else FAIL


def cmd_laurent(args) -> int:
    fieldk = _field(args.field)
    try:
        p = parse_frac(args.frac, fieldk)
    except (FracSyntaxError, ZeroDivisionError) as exc:
        raise InputError(f"bad fraction {args.frac!r}: {exc}") from exc
    if args.lo > args.hi:
        raise InputError("--from must not exceed --to")
    w = laurent_expand(p, args.lo, args.hi)
    data = {"fraction": str(p), "start": w.start, "coeffs": [str(c) for c in w.coeffs], "rational": p.is_rational()}
    _emit(args, str(w), data)
    return OK


def cmd_export_graph(args) -> int:
    net = compile(_load(args.file))
    if args.json:
        gates = [
            {"kind": g.kind, "param": None if g.param is None else str(g.param), "in": list(g.ins), "out": list(g.outs), "slot": g.slot}
            for g in net.gates
        ]
        data = {"wires": net.wires, "left": list(net.left), "right": list(net.right), "registers": net.registers, "gates": gates}
        print(json.dumps(data, indent=2))
    else:
        print(net.to_dot())
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--field", default="QQ", help="base field: QQ (default) or GF(p)")
    p = argparse.ArgumentParser(prog="sfcalc", description="Affine signal flow calculus workbench.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("check", parents=[common], help="parse a circuit and print its sort")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("dsem", parents=[common], help="print the denotation as a constraint system")
    s.add_argument("file")
    s.set_defaults(func=cmd_dsem)

    s = sub.add_parser("equiv", parents=[common], help="decide equivalence; print a witness if different")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("sim", parents=[common], help="simulate from a start clock")
    s.add_argument("file")
    s.add_argument("--start", type=int, default=0)
    s.add_argument("--steps", type=int, default=8)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--inputs", help='streams, ports split by ";" and ticks by ","')
    g.add_argument("--inputs-file", help="trajectory file in the 't: [lefts] | [rights]' format")
    s.add_argument("--existential", action="store_true", help="track all reachable register states")
    s.set_defaults(func=cmd_sim)

    s = sub.add_parser("step-repl", parents=[common], help="interactive tick-by-tick stepper")
    s.add_argument("file")
    s.add_argument("--start", type=int, default=0)
    s.set_defaults(func=cmd_step_repl)

    s = sub.add_parser("realisable", parents=[common], help="search for a realising port partition")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=12, help="maximum number of ports")
    s.set_defaults(func=cmd_realisable)

    s = sub.add_parser("distinguish", parents=[common], help="synthesise a distinguishing context")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_distinguish)

    s = sub.add_parser("axioms", parents=[common], help="check the axiom system denotationally")
    s.add_argument("--samples", help="comma separated scalars (default 1,-1,2,1/2,3)")
    s.set_defaults(func=cmd_axioms)

    s = sub.add_parser("laurent", parents=[common], help="Laurent coefficients of a fraction")
    s.add_argument("frac")
    s.add_argument("--from", dest="lo", type=int, default=0)
    s.add_argument("--to", dest="hi", type=int, default=8)
    s.set_defaults(func=cmd_laurent)

    s = sub.add_parser("export-graph", parents=[common], help="netlist as dot text")
    s.add_argument("file")
    s.set_defaults(func=cmd_export_graph)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
