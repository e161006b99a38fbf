"""Backend dispatch for the hot numeric kernels.

Two interchangeable implementations exist: numba @njit loops
(:mod:`flowsymm._kernels_numba`) and vectorized numpy
(:mod:`flowsymm._kernels_numpy`). The active one is picked at import time
from the FLOWSYMM_BACKEND environment variable ("numba" or "numpy",
default numba when importable) and can be switched at runtime with
:func:`use_backend`. Call sites must go through this module
(``kernels.scatter_add(...)``) so a switch takes effect everywhere.

``benchmarks/bench_kernels.py`` times the two backends against each other.
"""

from __future__ import annotations

import os
import warnings

from . import _kernels_numpy

_BACKENDS = {"numpy": _kernels_numpy}

try:
    from . import _kernels_numba

    _BACKENDS["numba"] = _kernels_numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _kernels_numba = None

_active = None
backend_name = ""


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def use_backend(name: str) -> str:
    """Activate a kernel backend by name; returns the name actually in effect."""
    global _active, backend_name
    global scatter_add, segment_softmax, normal_matvec, cg_normal_solve
    if name not in _BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; available: {available_backends()}")
    _active = _BACKENDS[name]
    backend_name = name
    scatter_add = _active.scatter_add
    segment_softmax = _active.segment_softmax
    normal_matvec = _active.normal_matvec
    cg_normal_solve = _active.cg_normal_solve
    return backend_name


def get_backend(name: str):
    """Return the raw backend module (for benchmarks and equivalence tests)."""
    if name not in _BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; available: {available_backends()}")
    return _BACKENDS[name]


_requested = os.environ.get("FLOWSYMM_BACKEND", "numba").lower()
if _requested not in _BACKENDS:
    if _requested != "numba":
        warnings.warn(
            f"FLOWSYMM_BACKEND={_requested!r} not available, falling back to numpy",
            stacklevel=1,
        )
    _requested = "numpy"
use_backend(_requested)
