import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfcalc import (
    GF,
    QQ,
    Frac,
    Gen,
    LaurentWindow,
    NetState,
    SortError,
    check_agreement,
    compile,
    dsem,
    extract_affine_map,
    kappa_iota,
    laurent_expand,
    load,
    observes_infinite,
    parse,
    rel_member,
    run,
    run_function,
    step,
    vector_context,
)
from sfcalc.constructions import par, seq
from sfcalc.operational import (
    Ambiguous,
    AmbiguousAt,
    Infeasible,
    RunError,
    Stuck,
    Unique,
    agreement_start,
    format_trajectory,
    initial_reachable,
    parse_trajectory,
    reachable_step,
    step_function,
)
from sfcalc.random_circuits import ASF_KINDS, random_asf, random_circuit, random_frac, random_member
from conftest import CIRCUITS

x = Frac.x()
Q = QQ
F3 = GF(3)


def zeros(k, field=QQ):
    return (field.zero,) * k


def loop():
    return load(CIRCUITS / "loop.sfc")


# compilation


def test_compile_counts():
    net = compile(parse("one ; cozero"))
    assert (net.wires, len(net.gates), net.registers) == (1, 2, 0)
    net = compile(Gen("reg"))
    assert (net.wires, len(net.gates), net.registers, len(net.left), len(net.right)) == (2, 1, 1, 1, 1)


def test_compile_loop_frozen():
    # captured once from the compiler and frozen
    net = compile(loop())
    assert (net.wires, len(net.gates), net.registers) == (14, 12, 1)


def test_wire_attachments():
    rng = random.Random(1)
    for _ in range(40):
        c = random_circuit(rng, max_ports=4)
        net = compile(c)
        uses = [0] * net.wires
        for g in net.gates:
            for w in g.ins + g.outs:
                uses[w] += 1
        for w in net.left + net.right:
            uses[w] += 1
        # boundary wires count their attachment to the outside
        assert all(u == 2 for u in uses), (str(c), uses)


def test_empty_has_no_gate():
    net = compile(parse("empty + id"))
    assert [g.kind for g in net.gates] == ["id"]


# single steps


def test_register_step():
    net = compile(Gen("reg"))
    s = NetState(net, (Q(4),), 3)
    assert step(s, (Q(7),), (Q(4),)) == Unique((Q(7),))
    assert isinstance(step(s, (Q(7),), (Q(5),)), Infeasible)


def test_one_step():
    net = compile(Gen("one"))
    assert step(NetState.initial(net, 0), (), (Q(1),)) == Unique(())
    assert isinstance(step(NetState.initial(net, 1), (), (Q(1),)), Infeasible)
    assert step(NetState.initial(net, -1), (), (Q(0),)) == Unique(())


def test_empty_example_step():
    net = compile(parse("one ; cozero"))
    assert isinstance(step(NetState.initial(net, 0), (), ()), Infeasible)
    assert step(NetState.initial(net, 1), (), ()).ok


def test_ambiguous_successor():
    net = compile(parse("codiscard ; reg ; discard"))
    res = step(NetState.initial(net, 0), (), ())
    assert isinstance(res, Ambiguous)
    assert res.space.dimension() == 1


def test_step_arity_error():
    net = compile(Gen("reg"))
    with pytest.raises(ValueError):
        step(NetState.initial(net), (), ())


# runs


def test_loop_run():
    ins = [((Q(1 if t == 0 else 0),), (Q(1),)) for t in range(32)]
    tr = run(loop(), 0, ins)
    assert tr.ok and len(tr.steps) == 32


def test_one_over_x_run():
    c = parse("one ; coreg")
    res = run(c, 0, [((), (Q(1),))] + [((), (Q(0),))] * 3)
    assert isinstance(res, Stuck) and res.clock == 0
    res = run(c, 0, [((), (Q(0),))] * 4)
    assert isinstance(res, Stuck) and res.clock == 0
    tr = run(c, -1, [((), (Q(1),)), ((), (Q(0),)), ((), (Q(0),))])
    assert tr.ok and tr.states[1] == (Q(1),)


def test_zero_run():
    c = Gen("zero")
    assert run(c, -3, [((), (Q(0),))] * 5).ok
    res = run(c, -3, [((), (Q(0),))] * 3 + [((), (Q(1),))])
    assert isinstance(res, Stuck) and res.clock == 0


def test_run_reports_ambiguity():
    res = run(parse("codiscard ; reg ; discard"), 0, [((), ())] * 3)
    assert isinstance(res, AmbiguousAt) and res.clock == 0
    assert run(parse("codiscard ; reg ; discard"), 0, [((), ())] * 3, existential=True).ok


def test_run_rejects_positive_start():
    with pytest.raises(ValueError):
        run(Gen("id"), 1, [])


def test_trajectory_format_round_trip():
    c = parse("one ; coreg")
    tr = run(c, -1, [((), (Q(1),)), ((), (Q(0),))])
    text = format_trajectory(tr)
    assert text == "-1: [] | [1]\n0: [] | [0]"
    back = parse_trajectory(text)
    assert back.start == -1 and back.steps == tr.steps
    with pytest.raises(ValueError):
        parse_trajectory("0: [] | [1]\n2: [] | [0]")


# function mode


def test_run_function_examples():
    out = run_function(Gen("reg"), [LaurentWindow(0, (Q(1), Q(2), Q(3)))], 3)
    assert list(out[0].coeffs) == [0, 1, 2]
    out = run_function(loop(), [LaurentWindow(0, (Q(1),))], 4)
    assert list(out[0].coeffs) == [1, 1, 1, 1]
    out = run_function(parse("one + id ; add"), [LaurentWindow(0, (Q(5), Q(0)))], 2)
    assert list(out[0].coeffs) == [6, 0]
    # cross-check: Laurent expansion of p + 1 with p = 5
    assert list(laurent_expand(Frac(5) + 1, 0, 2).coeffs) == [6, 0]


def test_run_function_rejects_relations():
    with pytest.raises(RunError):
        run_function(Gen("coadd"), [LaurentWindow(0, (Q(1),))], 2)


def test_run_function_needs_lookahead():
    # functional, but the right value at t is fixed only at t + 1
    with pytest.raises(RunError):
        run_function(parse("reg ; coreg"), [LaurentWindow(0, (Q(1),))], 3)


# kappa . iota


def test_kappa_iota_examples():
    tr = kappa_iota(((Frac(1),), (1 / (1 - x),)), 0, 4)
    assert tr.lefts(0) == [1, 0, 0, 0] and tr.rights(0) == [1, 1, 1, 1]
    tr = kappa_iota(((), (1 / x,)), -1, 2)
    assert tr.start == -1 and tr.rights(0) == [1, 0, 0]
    tr = kappa_iota(((Frac(0),), (Frac(0), Frac(0))), -2, 2)
    assert all(a == 0 for l, r in tr.steps for a in l + r)


# agreement


def test_agreement_examples():
    assert check_agreement(loop(), ((Frac(1),), (1 / (1 - x),)), 32)
    assert check_agreement(parse("one ; coreg"), ((), (1 / x,)), 16)
    rng = random.Random(12)
    for _ in range(10):
        p = random_frac(rng, rational=True)
        assert check_agreement(Gen("id"), ((p,), (p,)), 16)


def test_agreement_rejects_non_members():
    with pytest.raises(ValueError):
        check_agreement(Gen("id"), ((Frac(1),), (Frac(2),)), 8)


def test_agreement_corpus(corpus):
    rng = random.Random(21)
    for name, c in corpus.items():
        G = dsem(c)
        if G.is_empty():
            continue
        for _ in range(5):
            u, v = random_member(rng, G)
            assert check_agreement(c, (u, v), 12), name


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_agreement_property(seed):
    rng = random.Random(seed)
    c = random_circuit(rng, max_ports=4, max_regs=5, min_ports=1)
    G = dsem(c)
    if G.is_empty():
        return
    u, v = random_member(rng, G)
    assert check_agreement(c, (u, v), 12)


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_perturbed_samples_get_stuck(seed):
    rng = random.Random(seed)
    c = random_circuit(rng, max_ports=4, max_regs=5, min_ports=1)
    G = dsem(c)
    if G.is_empty():
        return
    u, v = random_member(rng, G, rational=True)
    pt = list(u) + list(v)
    j = rng.randrange(len(pt))
    pt[j] = pt[j] + x ** rng.randint(0, 3)
    u, v = pt[: c.sort.n], pt[c.sort.n :]
    if rel_member(G, u, v):
        return
    start = agreement_start(c, u, v)
    tau = kappa_iota((u, v), start, 24)
    assert not run(c, start, tau.steps, existential=True).ok


def test_non_members_get_stuck():
    # expansions of pairs outside the denotation are not runs
    c = Gen("reg")
    u, v = (Frac(1),), (Frac(1),)
    start = agreement_start(c, u, v)
    tau = kappa_iota((u, v), start, 8)
    assert not run(c, start, tau.steps, existential=True).ok


# observation


def test_observes_infinite_examples():
    assert observes_infinite(Gen("empty"))
    assert not observes_infinite(parse("one ; cozero"))
    assert observes_infinite(parse("one ; discard"))
    with pytest.raises(SortError):
        observes_infinite(Gen("id"))


def test_observes_infinite_closed_random():
    rng = random.Random(30)
    seen = 0
    while seen < 30:
        c = random_circuit(rng, max_ports=4)
        if c.sort.n + c.sort.m == 0:
            continue
        G = dsem(c)
        if G.is_empty():
            continue
        u, v = random_member(rng, G)
        c_u, c_v = vector_context(u, v)
        assert observes_infinite(seq(c_u, c, c_v))
        seen += 1


# idle lemma


def _idle_ok(net, t):
    res = step(NetState.initial(net, t), zeros(net.n), zeros(net.m))
    if isinstance(res, Unique):
        return all(r == 0 for r in res.registers)
    if isinstance(res, Ambiguous):
        return rel_member(res.space, [], [Frac(0)] * net.registers)
    return False


def test_idle_lemma_corpus(corpus):
    for name, c in corpus.items():
        net = compile(c)
        for t in range(-6, 0):
            assert _idle_ok(net, t), (name, t)


@given(st.integers(0, 10**6))
def test_idle_lemma_random(seed):
    rng = random.Random(seed)
    net = compile(random_circuit(rng, max_ports=4))
    for t in range(-4, 0):
        assert _idle_ok(net, t)


# ASF liveness and determinism


def _walk(c, rng, ticks=32, start=0):
    net = compile(c)
    s = NetState.initial(net, start)
    for k in range(ticks):
        left = tuple(Q(rng.choice([0, 0, 1, -1, 2, "1/2"])) for _ in range(net.n))
        res = step_function(s, left)
        assert isinstance(res, Unique), (str(c), start + k, res)
        s = NetState(net, res.registers, s.clock + 1)


def test_asf_liveness():
    rng = random.Random(40)
    for _ in range(60):
        _walk(random_asf(rng), rng, start=rng.randint(-3, 0))


@given(st.integers(0, 10**6))
def test_asf_liveness_property(seed):
    rng = random.Random(seed)
    _walk(random_asf(rng), rng)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_run_function_matches_map(seed):
    rng = random.Random(seed)
    c = random_asf(rng)
    f = extract_affine_map(dsem(c))
    assert f is not None
    u = [random_frac(rng, rational=True) for _ in range(c.sort.n)]
    H = 12
    outs = run_function(c, [laurent_expand(p, 0, H) for p in u], H)
    for o, q in zip(outs, f(u)):
        assert list(o.coeffs) == list(laurent_expand(q, 0, H).coeffs)


def test_asf_kinds_are_flow_directed():
    assert not any(k.startswith("co") for k in ASF_KINDS if k != "copy")


# prop-morphism coherence over GF(3)


def _reach_all(net, start, lefts, rights, field):
    cur = initial_reachable(net, field)
    for k, (l, r) in enumerate(zip(lefts, rights)):
        cur = reachable_step(net, cur, l, r, start + k, field)
        if cur is None:
            return False
    return True


def _exists_middle(nc, nd, start, us, ws, b, field):
    """DFS over the shared boundary, pruning on either side's reachable set."""
    els = field.elements()
    mids = list(itertools.product(els, repeat=b))

    def go(k, rc, rd):
        if k == len(us):
            return True
        for v in mids:
            a = reachable_step(nc, rc, us[k], v, start + k, field)
            if a is None:
                continue
            d = reachable_step(nd, rd, v, ws[k], start + k, field)
            if d is None:
                continue
            if go(k + 1, a, d):
                return True
        return False

    return go(0, initial_reachable(nc, field), initial_reachable(nd, field))


def _stream(rng, k, H, field):
    return [tuple(field(rng.choice([0, 0, 0, 1, 2])) for _ in range(k)) for _ in range(H)]


def test_prop_morphism_coherence():
    rng = random.Random(50)
    H, start = 8, -2
    checked = positive = 0
    while checked < 150:
        c = random_circuit(rng, max_ports=3, layers=4, max_regs=2, field=F3)
        if not (c.sort.m in (1, 2) and c.sort.n <= 1):
            continue
        d = random_circuit(rng, max_ports=3, layers=4, max_regs=2, field=F3, sort=(c.sort.m, rng.randint(0, 1)))
        cd = seq(c, d)
        ncd, nc, nd = compile(cd), compile(c), compile(d)
        for _ in range(3):
            us, ws = _stream(rng, c.sort.n, H, F3), _stream(rng, d.sort.m, H, F3)
            lhs = _reach_all(ncd, start, us, ws, F3)
            rhs = _exists_middle(nc, nd, start, us, ws, c.sort.m, F3)
            assert lhs == rhs, (str(c), str(d), us, ws)
            positive += lhs
        checked += 1
    assert positive > 0


def test_tensor_coherence():
    rng = random.Random(51)
    for _ in range(100):
        c = random_circuit(rng, max_ports=2, layers=3, max_regs=2, field=F3)
        d = random_circuit(rng, max_ports=2, layers=3, max_regs=2, field=F3)
        net, nc, nd = compile(par(c, d)), compile(c), compile(d)
        for _ in range(3):
            uc, vc = _stream(rng, c.sort.n, 6, F3), _stream(rng, c.sort.m, 6, F3)
            ud, vd = _stream(rng, d.sort.n, 6, F3), _stream(rng, d.sort.m, 6, F3)
            both = _reach_all(net, -1, [a + b for a, b in zip(uc, ud)], [a + b for a, b in zip(vc, vd)], F3)
            assert both == (_reach_all(nc, -1, uc, vc, F3) and _reach_all(nd, -1, ud, vd, F3))
