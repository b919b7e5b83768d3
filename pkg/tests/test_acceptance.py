"""Acceptance gate: one check per exit criterion.

Run with ``pytest -m acceptance -v`` (a summary line per criterion is printed
at the end of the session) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

from golden_cases import CASES, GOLDEN, run_case  # noqa: E402
from oracles import compose_sets, points, tensor_sets  # noqa: E402
from sfcalc import (  # noqa: E402
    GF,
    Frac,
    Gen,
    NetState,
    axiom_suite,
    check_agreement,
    compile,
    distinguishing_context,
    dsem,
    equiv,
    load,
    observes_infinite,
    parse,
    realisable,
    rel_compose,
    rel_member,
    rel_tensor,
    render,
    run,
    run_function,
    step,
    vector_context,
)
from sfcalc.analysis import DEFAULT_SAMPLES  # noqa: E402
from sfcalc.constructions import par, seq  # noqa: E402
from sfcalc.laurent import LaurentWindow  # noqa: E402
from sfcalc.operational import Ambiguous, Stuck, Unique, step_function  # noqa: E402
from sfcalc.random_circuits import (  # noqa: E402
    mutate_scalar,
    random_asf,
    random_circuit,
    random_member,
    random_relation,
    random_term,
)

CIRCUITS = HERE.parent / "circuits"
x = Frac.x()
RESULTS: dict = {}

pytestmark = pytest.mark.acceptance


def _check(cond, why):
    if not cond:
        raise AssertionError(why)


def criterion_1():
    rep = axiom_suite(DEFAULT_SAMPLES)
    bad = [r.label for r in rep.failures()]
    _check(not bad, f"failing axioms: {bad}")
    return f"{len(rep.results)} axiom instances hold"


def criterion_2():
    from sfcalc import QQ

    loop = load(CIRCUITS / "loop.sfc")
    _check(rel_member(dsem(loop), [Frac(1)], [1 / (1 - x)]), "(a) (1, 1/(1-x)) not in the loop denotation")
    ins = [LaurentWindow(0, tuple(QQ(1 if t == 0 else 0) for t in range(32)))]
    out = run_function(loop, ins, 32)
    _check(list(out[0].coeffs) == [1] * 32, "(b) loop does not emit 1,1,1,...")
    tr = run(loop, 0, [((QQ(1 if t == 0 else 0),), (QQ(1),)) for t in range(32)])
    _check(tr.ok, "(b) checking run of the loop is stuck")
    oc = parse("one ; coreg")
    stuck = run(oc, 0, [((), (QQ(1),))] + [((), (QQ(0),))] * 3)
    _check(isinstance(stuck, Stuck) and stuck.clock == 0, "(c) one;coreg not stuck at 0")
    _check(
        all(isinstance(run(oc, 0, [((), (QQ(v),))] * 3), Stuck) for v in (0, 1, 2)),
        "(c) one;coreg runs from 0",
    )
    past = run(oc, -1, [((), (QQ(1),))] + [((), (QQ(0),))] * 4)
    _check(past.ok, "(c) one;coreg stuck from -1")
    oz = parse("one ; cozero")
    _check(dsem(oz).is_empty() and not observes_infinite(oz), "(d) one;cozero")
    _check(observes_infinite(Gen("empty")), "(d) empty diagram")
    _check(equiv(Gen("id"), parse("reg ; coreg")) and equiv(Gen("id"), parse("coreg ; reg")), "(e) spans")
    return "examples (a)-(e) reproduced"


def criterion_3():
    F = GF(3)
    rng = random.Random(3)
    for k in range(200):
        n, m, l = (rng.randint(0, 3) for _ in range(3))
        while n + m > 4 or m + l > 4:
            n, m, l = (rng.randint(0, 3) for _ in range(3))
        G, H = random_relation(rng, n, m, F), random_relation(rng, m, l, F)
        PG, PH = points(G, F), points(H, F)
        _check(points(rel_compose(G, H), F) == compose_sets(PG, PH), f"compose mismatch on pair {k}")
        _check(points(rel_tensor(G, H), F) == tensor_sets(PG, PH), f"tensor mismatch on pair {k}")
    return "200 GF(3) pairs agree with set-level compose and tensor"


def criterion_4():
    rng = random.Random(4)
    done = regs = 0
    while done < 100:
        c = random_circuit(rng, max_ports=4, max_regs=5, min_ports=1)
        G = dsem(c)
        if G.is_empty():
            continue
        u, v = random_member(rng, G)
        _check(check_agreement(c, (u, v), 32), f"no run for {render(c)} at {u} | {v}")
        regs += compile(c).registers
        done += 1
    return f"100 circuits ({regs} registers in total) agree to horizon 32"


def _span(rng, k):
    return par(*[parse(rng.choice(["reg ; coreg", "coreg ; reg", "id"])) for _ in range(k)])


def _pair(rng):
    c = random_circuit(rng, max_ports=3, layers=4)
    roll = rng.random()
    if roll < 0.3:
        d = mutate_scalar(c, rng)
    elif roll < 0.6 and c.sort.n + c.sort.m:
        # same denotation, different syntax: register spans on the boundary
        d = seq(_span(rng, c.sort.n), c, _span(rng, c.sort.m))
    else:
        d = None
    if d is None or d == c:
        d = random_circuit(rng, max_ports=3, layers=4, sort=tuple(c.sort))
    return c, d


def criterion_5():
    rng = random.Random(5)
    counts = [0, 0]
    for _ in range(50):
        c, d = _pair(rng)
        if not equiv(c, d):
            ctx = distinguishing_context(c, d)
            _check(observes_infinite(ctx.apply(c)) != observes_infinite(ctx.apply(d)), f"{render(c)} vs {render(d)}")
            counts[0] += 1
        else:
            G = dsem(c)
            for _ in range(20):
                if G.is_empty():
                    u = [Frac(rng.randint(-2, 2)) for _ in range(c.sort.n)]
                    v = [Frac(rng.randint(-2, 2)) for _ in range(c.sort.m)]
                else:
                    u, v = random_member(rng, G)
                c_u, c_v = vector_context(u, v)
                _check(
                    observes_infinite(seq(c_u, c, c_v)) == observes_infinite(seq(c_u, d, c_v)),
                    f"equivalent pair separated: {render(c)} vs {render(d)}",
                )
            counts[1] += 1
    return f"{counts[0]} inequivalent pairs separated, {counts[1]} equivalent pairs never separated"


def criterion_6():
    _check(realisable(Gen("one")).realisable, "one")
    _check(not realisable(parse("one ; coreg")).realisable, "one;coreg")
    _check(realisable(Gen("reg")).realisable, "reg")
    _check(realisable(load(CIRCUITS / "plus-one.sfc")).realisable, "p -> p+1")
    rng = random.Random(6)
    yes = 0
    for _ in range(50):
        c = random_circuit(rng, max_ports=4, layers=4)
        r = realisable(c)
        _check(r.hat_agrees, f"hat criterion disagrees on {render(c)}")
        yes += r.realisable
    return f"examples hold; hat criterion agrees on 50 circuits ({yes} realisable)"


def _idle(net, t):
    res = step(NetState.initial(net, t), (0,) * net.n, (0,) * net.m)
    if isinstance(res, Unique):
        return not any(res.registers)
    if isinstance(res, Ambiguous):
        return rel_member(res.space, [], [Frac(0)] * net.registers)
    return False


def criterion_7():
    from sfcalc import QQ

    corpus = [load(p) for p in sorted(CIRCUITS.glob("*.sfc"))]
    for c in corpus:
        net = compile(c)
        for t in range(-8, 0):
            _check(_idle(net, t), f"{render(c)} cannot idle at t = {t}")
    rng = random.Random(7)
    for _ in range(50):
        c = random_asf(rng)
        net = compile(c)
        s = NetState.initial(net, rng.randint(-3, 0))
        for _ in range(32):
            left = tuple(QQ(rng.choice([0, 1, -1, 2])) for _ in range(net.n))
            res = step_function(s, left)
            _check(isinstance(res, Unique), f"walk on {render(c)} got {type(res).__name__} at t = {s.clock}")
            s = NetState(net, res.registers, s.clock + 1)
    return f"idle on {len(corpus)} corpus circuits; 50 walks of 32 ticks never stuck"


def criterion_8():
    rng = random.Random(8)
    for _ in range(200):
        c = random_term(rng, depth=5)
        _check(parse(render(c)) == c, f"round trip failed for {render(c)}")
    for name, (argv, stdin) in CASES.items():
        expected = (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")
        _check(run_case(argv, stdin) == expected, f"golden mismatch: {name}")
    return f"200 round trips; {len(CASES)} golden files match"


CRITERIA = {
    1: ("axiom suite", criterion_1),
    2: ("worked examples", criterion_2),
    3: ("composition oracle", criterion_3),
    4: ("agreement theorem", criterion_4),
    5: ("adequacy and full abstraction", criterion_5),
    6: ("realisability", criterion_6),
    7: ("idle lemma and ASF liveness", criterion_7),
    8: ("parser round-trip and CLI golden files", criterion_8),
}


def evaluate(k):
    title, fn = CRITERIA[k]
    t0 = time.perf_counter()
    try:
        detail, ok = fn(), True
    except AssertionError as exc:
        detail, ok = str(exc), False
    secs = time.perf_counter() - t0
    line = f"criterion {k} ({title}): {'PASS' if ok else 'FAIL'} in {secs:.1f}s: {detail}"
    RESULTS[k] = line
    return ok, secs, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, secs, line = evaluate(k)
    print(line)
    assert ok, line
    assert secs < 60, f"criterion {k} took {secs:.1f}s"


if __name__ == "__main__":
    failed = 0
    for k in sorted(CRITERIA):
        ok, _, line = evaluate(k)
        print(line, flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
