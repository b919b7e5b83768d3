"""Kernel selection.

The compiled ``_kernels`` extension is used when it has been built and
``SFCALC_PURE`` is not set in the environment; otherwise the pure-Python
``_kernels_py`` module is used. ``BACKEND`` names the active choice.
"""

import os

if os.environ.get("SFCALC_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = "cython" if _impl.__name__.endswith("._kernels") else "python"

trim = _impl.trim
poly_add = _impl.poly_add
poly_sub = _impl.poly_sub
poly_neg = _impl.poly_neg
poly_scale = _impl.poly_scale
poly_mul = _impl.poly_mul
poly_divmod = _impl.poly_divmod
poly_monic = _impl.poly_monic
poly_gcd = _impl.poly_gcd
series_div = _impl.series_div
rref = _impl.rref

__all__ = [
    "BACKEND",
    "trim",
    "poly_add",
    "poly_sub",
    "poly_neg",
    "poly_scale",
    "poly_mul",
    "poly_divmod",
    "poly_monic",
    "poly_gcd",
    "series_div",
    "rref",
]
