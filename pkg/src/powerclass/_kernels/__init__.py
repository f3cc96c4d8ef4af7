"""Kernel dispatch: compiled extension when available, pure Python otherwise.

The compiled backend is selected at import time.  Set POWERCLASS_BACKEND=python
to force the fallback (used by the benchmark and for debugging).  Individual
calls whose modulus could overflow 64-bit intermediates are routed to the
pure-Python implementation regardless of backend.
"""

from __future__ import annotations

import os

from . import pykernels

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

if os.environ.get("POWERCLASS_BACKEND") == "python":
    _ckernels = None

BACKEND = "c" if _ckernels is not None else "python"

# Largest modulus the compiled kernels accept: intermediates are bounded by
# modulus**2 * row_length, which must stay below 2**63.
_C_MOD_LIMIT = 1 << 25
_C_LEN_LIMIT = 1 << 12


def _use_c(modulus: int, length: int) -> bool:
    return _ckernels is not None and modulus <= _C_MOD_LIMIT and length <= _C_LEN_LIMIT


def conv_mod(a, b, modulus):
    if _use_c(modulus, len(a)):
        return _ckernels.conv_mod(a, b, modulus)
    return pykernels.conv_mod(a, b, modulus)


def howell_form(rows, p, m):
    if rows and _use_c(p**m, len(rows[0])):
        return _ckernels.howell_form(rows, p, m)
    return pykernels.howell_form(rows, p, m)


def reduce_vector(vec, rows, p, m):
    if _use_c(p**m, len(vec)):
        return _ckernels.reduce_vector(vec, rows, p, m)
    return pykernels.reduce_vector(vec, rows, p, m)


def count_annihilating(x, p, m):
    if _use_c(p**m, len(x)):
        return _ckernels.count_annihilating(x, p, m)
    return pykernels.count_annihilating(x, p, m)
