"""Backend selection for the exhaustive scans.

The compiled ``_scan`` extension is used when it imports and the int64
overflow bound allows; otherwise the pure-Python ``_scan_py`` twin runs on
unbounded Python ints.  Set ``NLEIBNIZ_PURE_PYTHON=1`` to force the fallback.

Rational inputs are cleared of denominators first.  Every identity scanned
here is homogeneous in each input family, so scaling a family by a positive
integer never changes which tuples fail.
"""

from __future__ import annotations

import os
from array import array
from math import lcm

from . import _scan_py

try:
    if os.environ.get("NLEIBNIZ_PURE_PYTHON"):
        raise ImportError("pure Python forced")
    from . import _scan as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

_INT64_SAFE = 1 << 62


def scaled_ints(values) -> list:
    """Multiply rationals by the lcm of their denominators."""
    values = list(values)
    den = lcm(*(v.denominator for v in values)) if values else 1
    return [int(v * den) for v in values]


def _maxabs(xs) -> int:
    return max((abs(x) for x in xs), default=0)


def _impl(bound: int, force_python: bool):
    if force_python or _compiled is None or bound >= _INT64_SAFE:
        return _scan_py, list
    return _compiled, lambda xs: array("q", xs)


def first_derivation_failure(ops, nops, consts, d, n, force_python=False):
    ops, consts = scaled_ints(ops), scaled_ints(consts)
    bound = (n + 1) * d * _maxabs(ops) * _maxabs(consts)
    mod, conv = _impl(bound, force_python)
    return mod.first_derivation_failure(conv(ops), nops, conv(consts), d, n)


def first_invariance_failure(ops, nops, form, d, order, force_python=False):
    ops, form = scaled_ints(ops), scaled_ints(form)
    bound = (order + 1) * d * _maxabs(ops) * _maxabs(form)
    mod, conv = _impl(bound, force_python)
    return mod.first_invariance_failure(conv(ops), nops, conv(form), d, order)


def first_symmetry_failure(consts, form, d, n, force_python=False):
    consts, form = scaled_ints(consts), scaled_ints(form)
    bound = 2 * d * _maxabs(consts) * _maxabs(form)
    mod, conv = _impl(bound, force_python)
    return mod.first_symmetry_failure(conv(consts), conv(form), d, n)


def first_cyclic_failure(consts, d, n, force_python=False):
    consts = scaled_ints(consts)
    bound = n * _maxabs(consts)
    mod, conv = _impl(bound, force_python)
    return mod.first_cyclic_failure(conv(consts), d, n)
