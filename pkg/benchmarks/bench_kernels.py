"""Compiled versus pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Kernel timings call both modules directly. The end-to-end timing (denotation
plus an agreement run on a fixed set of random circuits) runs in a subprocess
per backend, since the backend is chosen once at import.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

from sfcalc import QQ  # noqa: E402
from sfcalc import _kernels_py as pure  # noqa: E402

try:
    from sfcalc import _kernels as compiled
except ImportError:
    compiled = None

END_TO_END = """
import random, time
from sfcalc import BACKEND, check_agreement, dsem
from sfcalc.random_circuits import random_circuit, random_member
rng = random.Random(11)
t0 = time.perf_counter()
done = 0
while done < 60:
    c = random_circuit(rng, max_ports=4, max_regs=5, min_ports=1)
    G = dsem(c)
    if G.is_empty():
        continue
    assert check_agreement(c, random_member(rng, G), 32)
    done += 1
print(BACKEND, time.perf_counter() - t0)
"""


def _inputs(rng):
    polys = [tuple(QQ(rng.randint(-9, 9)) for _ in range(24)) for _ in range(2)]
    den = (QQ(1),) + tuple(QQ(rng.randint(-3, 3)) for _ in range(6))
    mats = [[[QQ(rng.randint(-4, 4)) for _ in range(12)] for _ in range(9)] for _ in range(20)]
    return polys, den, mats


def _cases(mod, polys, den, mats):
    a, b = polys
    return {
        "poly_mul 24x24": lambda: mod.poly_mul(a, b),
        "series_div 64 terms": lambda: mod.series_div(a, den, 64),
        "rref 20 x (9x12)": lambda: [mod.rref([list(r) for r in m], 12) for m in mats],
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args(argv)
    polys, den, mats = _inputs(random.Random(1))
    mods = {"python": pure}
    if compiled is not None:
        mods["cython"] = compiled
    print(f"{'kernel':24}" + "".join(f"{name:>12}" for name in mods) + "     speedup")
    table = {name: _cases(mod, polys, den, mats) for name, mod in mods.items()}
    for case in table["python"]:
        secs = {name: min(timeit.repeat(table[name][case], number=args.repeat, repeat=3)) for name in mods}
        row = f"{case:24}" + "".join(f"{secs[n] * 1e6 / args.repeat:10.1f}us" for n in mods)
        if "cython" in secs:
            row += f"  {secs['python'] / secs['cython']:8.2f}x"
        print(row)

    print("\nend to end: 60 random circuits, denotation and agreement run to horizon 32")
    for flag in ("1", ""):
        env = dict(os.environ, SFCALC_PURE=flag)
        if not flag:
            env.pop("SFCALC_PURE")
        out = subprocess.run(
            [sys.executable, "-c", END_TO_END], env=env, cwd=ROOT, capture_output=True, text=True, check=True
        )
        backend, secs = out.stdout.split()
        print(f"  {backend:8} {float(secs):8.2f}s")


if __name__ == "__main__":
    main()
