"""Workbench for the affine signal flow calculus.

Circuits are parsed from a small text syntax, given a denotation as affine
relations over rational functions k(x), simulated tick by tick, and analysed
for equivalence and realisability.
"""

__version__ = "0.1.0"

from .analysis import (
    PortPartition,
    axiom_suite,
    distinguishing_context,
    realisable,
    rewire,
    rewire_circuit,
)
from .circuit import Circuit, Gen, Par, Seq, Sort, SortError, mirror, sort_of
from .constructions import (
    cap,
    cup,
    fraction_to_circuit,
    hat,
    matrix_to_circuit,
    single_one_form,
    trace,
    vector_context,
)
from .dsl import CircuitSyntaxError, load, parse, render
from .field import GF, QQ
from .frac import Frac, frac_arith, parse_frac
from .kernels import BACKEND
from .laurent import LaurentWindow, is_rational, laurent_expand
from .operational import (
    NetState,
    Trajectory,
    check_agreement,
    compile,
    kappa_iota,
    observes_infinite,
    run,
    run_function,
    step,
)
from .relation import (
    AffineMap,
    AffineRelation,
    extract_affine_map,
    map_is_rational,
    rel_compose,
    rel_equal,
    rel_from_constraints,
    rel_member,
    rel_tensor,
)
from .semantics import dsem, equiv, witness

__all__ = [
    "__version__",
    "BACKEND",
    "QQ",
    "GF",
    "Frac",
    "frac_arith",
    "parse_frac",
    "LaurentWindow",
    "laurent_expand",
    "is_rational",
    "Circuit",
    "Gen",
    "Seq",
    "Par",
    "Sort",
    "SortError",
    "CircuitSyntaxError",
    "sort_of",
    "mirror",
    "parse",
    "render",
    "load",
    "trace",
    "cup",
    "cap",
    "matrix_to_circuit",
    "fraction_to_circuit",
    "vector_context",
    "single_one_form",
    "hat",
    "AffineRelation",
    "AffineMap",
    "rel_from_constraints",
    "rel_compose",
    "rel_tensor",
    "rel_equal",
    "rel_member",
    "dsem",
    "equiv",
    "witness",
    "extract_affine_map",
    "map_is_rational",
    "NetState",
    "Trajectory",
    "compile",
    "step",
    "run",
    "run_function",
    "kappa_iota",
    "check_agreement",
    "observes_infinite",
    "PortPartition",
    "rewire",
    "rewire_circuit",
    "realisable",
    "distinguishing_context",
    "axiom_suite",
]
