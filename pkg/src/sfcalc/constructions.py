"""Derived circuit constructions.

Smart constructors ``seq``/``par`` drop identity wires and empty diagrams so
that generated terms stay small; everything else here is built from them.
"""

from __future__ import annotations

from .circuit import (
    ADD,
    COCOPY,
    CODISCARD,
    COPY,
    DISCARD,
    EMPTY,
    ID,
    ONE,
    REG,
    SYM,
    ZERO,
    Circuit,
    Gen,
    Par,
    Seq,
    SortError,
    mirror,
    scalar,
)
from .frac import Frac
from .poly import Poly

__all__ = [
    "seq",
    "par",
    "ident",
    "is_identity",
    "permutation",
    "swap",
    "cup",
    "cap",
    "trace",
    "copy_tree",
    "add_tree",
    "poly_circuit",
    "matrix_to_circuit",
    "fraction_to_circuit",
    "vector_context",
    "single_one_form",
    "hat",
]


def is_identity(c: Circuit) -> bool:
    """True for ``id``, ``empty`` and parallel stacks of them."""
    for g in c.nodes():
        if isinstance(g, Seq):
            return False
        if isinstance(g, Gen) and g.kind not in ("id", "empty"):
            return False
    return True


def seq(*cs: Circuit) -> Circuit:
    """Left-nested sequential composite, skipping identity factors."""
    acc = None
    for c in cs:
        if acc is None:
            acc = c
        elif is_identity(c):
            if c.sort.n != acc.sort.m:
                raise SortError(f"cannot compose {acc.sort} with {c.sort}", c, acc.sort.m, c.sort.n)
        elif is_identity(acc):
            if acc.sort.m != c.sort.n:
                raise SortError(f"cannot compose {acc.sort} with {c.sort}", c, acc.sort.m, c.sort.n)
            acc = c
        else:
            acc = Seq(acc, c)
    if acc is None:
        raise ValueError("seq() needs at least one circuit")
    return acc


def par(*cs: Circuit) -> Circuit:
    """Left-nested parallel composite, skipping empty diagrams."""
    acc = None
    for c in cs:
        if c.sort == (0, 0) and is_identity(c):
            continue
        acc = c if acc is None else Par(acc, c)
    return EMPTY if acc is None else acc


def ident(n: int) -> Circuit:
    return par(*([ID] * n))


def permutation(perm) -> Circuit:
    """Wiring that sends input wire ``i`` to output position ``perm[i]``."""
    k = len(perm)
    if sorted(perm) != list(range(k)):
        raise ValueError(f"not a permutation: {perm}")
    cur = list(range(k))
    layers = []
    changed = True
    while changed:
        changed = False
        for j in range(k - 1):
            if perm[cur[j]] > perm[cur[j + 1]]:
                cur[j], cur[j + 1] = cur[j + 1], cur[j]
                layers.append(par(ident(j), SYM, ident(k - j - 2)))
                changed = True
    return seq(ident(k), *layers)


def swap(p: int, q: int) -> Circuit:
    """Block symmetry moving the top ``p`` wires below the next ``q``."""
    return permutation([q + i for i in range(p)] + list(range(q)))


def cup() -> Circuit:
    """Sort (0,2); denotes {(., (p, p))}."""
    return Seq(CODISCARD, COPY)


def cap() -> Circuit:
    """Sort (2,0); denotes {((p, p), .)}."""
    return Seq(COCOPY, DISCARD)


def trace(c: Circuit) -> Circuit:
    """Feed the first right port back to the first left port through a
    register on the return wire."""
    n, m = c.sort.n - 1, c.sort.m - 1
    if n < 0 or m < 0:
        raise SortError(f"trace needs sort (n+1, m+1), got {c.sort}", c, c.sort.n, c.sort.m)
    return seq(
        par(cup(), ident(n)),
        par(ID, c),
        par(ID, REG, ident(m)),
        par(cap(), ident(m)),
    )


def copy_tree(k: int) -> Circuit:
    """Sort (1,k) fan-out; discard for k = 0."""
    if k == 0:
        return DISCARD
    if k == 1:
        return ID
    return seq(COPY, par(ID, copy_tree(k - 1)))


def add_tree(k: int) -> Circuit:
    """Sort (k,1) fan-in; zero for k = 0."""
    if k == 0:
        return ZERO
    if k == 1:
        return ID
    return seq(par(ID, add_tree(k - 1)), ADD)


def _amp(c) -> Circuit:
    return ID if c == 1 else scalar(c)


def poly_circuit(p) -> Circuit:
    """Sort (1,1) Horner chain denoting {(v, p*v)}."""
    if isinstance(p, Frac):
        if not p.is_polynomial():
            raise ValueError(f"{p} is not a polynomial")
        coeffs = p._n
    elif isinstance(p, Poly):
        coeffs = p.coeffs
    else:
        coeffs = (p,) if p else ()
    if not coeffs:
        return seq(DISCARD, ZERO)
    d = len(coeffs) - 1
    acc = _amp(coeffs[d])
    for k in range(d - 1, -1, -1):
        shifted = seq(acc, REG)
        if coeffs[k]:
            acc = seq(COPY, par(_amp(coeffs[k]), shifted), ADD)
        else:
            acc = shifted
    return acc


def matrix_to_circuit(M, n: int | None = None) -> Circuit:
    """Circuit of sort (n, m) denoting the graph of the m x n polynomial
    matrix ``M`` (a list of rows). ``n`` is needed only when m = 0."""
    rows = [list(r) for r in M]
    m = len(rows)
    if n is None:
        if not rows:
            raise ValueError("column count required for a matrix with no rows")
        n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not rectangular")
    # wires in column-major order (j, i) for nonzero entries
    wires = [(j, i) for j in range(n) for i in range(m) if rows[i][j]]
    fan_out = par(*[copy_tree(sum(1 for (jj, _) in wires if jj == j)) for j in range(n)])
    weights = par(*[poly_circuit(rows[i][j]) for (j, i) in wires])
    order = sorted(range(len(wires)), key=lambda w: (wires[w][1], wires[w][0]))
    perm = [0] * len(wires)
    for pos, w in enumerate(order):
        perm[w] = pos
    fan_in = par(*[add_tree(sum(1 for (_, ii) in wires if ii == i)) for i in range(m)])
    return seq(fan_out, weights, permutation(perm), fan_in)


def fraction_to_circuit(p: Frac) -> Circuit:
    """Sort (0,1) circuit denoting {(., p)}."""
    if not p:
        return ZERO
    return seq(ONE, poly_circuit(p.num), mirror(poly_circuit(p.den)))


def vector_context(u, v) -> tuple[Circuit, Circuit]:
    """Circuits c_u : (0,n) and c_v : (m,0) denoting {(., u)} and {(v, .)}."""
    c_u = par(*[fraction_to_circuit(p) for p in u])
    c_v = par(*[mirror(fraction_to_circuit(q)) for q in v])
    return c_u, c_v


def _without_coone(c: Circuit) -> Circuit:
    if isinstance(c, Gen):
        if c.kind == "coone":
            return seq(par(ONE, ID), cap())
        return c
    if isinstance(c, Seq):
        return Seq(_without_coone(c.left), _without_coone(c.right))
    return Par(_without_coone(c.top), _without_coone(c.bottom))


def _pull_ones(c: Circuit) -> tuple[int, Circuit]:
    """Return (k, d) with d : (k + n, m) free of ``one`` such that plugging k
    copies of ``one`` into the first k left ports of d gives back c."""
    if isinstance(c, Gen):
        if c.kind == "one":
            return 1, ID
        return 0, c
    if isinstance(c, Seq):
        ka, a = _pull_ones(c.left)
        kb, b = _pull_ones(c.right)
        na, ma = c.left.sort
        return ka + kb, seq(
            par(ident(ka), swap(kb, na)),
            par(a, ident(kb)),
            swap(ma, kb),
            b,
        )
    ka, a = _pull_ones(c.top)
    kb, b = _pull_ones(c.bottom)
    na = c.top.sort.n
    nb = c.bottom.sort.n
    return ka + kb, seq(par(ident(ka), swap(kb, na), ident(nb)), par(a, b))


def single_one_form(c: Circuit) -> Circuit:
    """Equivalent circuit with exactly one ``one`` and no ``coone``."""
    k, d = _pull_ones(_without_coone(c))
    if k == 0:
        return par(c, seq(ONE, DISCARD))
    return seq(par(seq(ONE, copy_tree(k)), ident(c.sort.n)), d)


def hat(c: Circuit) -> Circuit:
    """Affine-free circuit of sort (n+1, m): the unique ``one`` of the
    single-one form replaced by a wire to the first left port."""
    k, d = _pull_ones(_without_coone(c))
    if k == 0:
        return par(DISCARD, c)
    return seq(par(copy_tree(k), ident(c.sort.n)), d)
