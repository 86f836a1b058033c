"""Hot loops: finite-field elimination and batched coset labelling.

Two interchangeable backends exist.  ``numba`` is used when importable;
setting ``STEINBERG_GG_BACKEND=numpy`` forces the pure-numpy path.  Both
modules stay importable so they can be compared directly.
"""

from __future__ import annotations

import os

from . import _numpy

try:
    from . import _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

_requested = os.environ.get("STEINBERG_GG_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"STEINBERG_GG_BACKEND must be 'numba' or 'numpy', not {_requested!r}")

BACKEND = "numba" if (_requested == "numba" and _numba is not None) else "numpy"
_impl = _numba if BACKEND == "numba" else _numpy

rref = _impl.rref
reduce_vec = _impl.reduce_vec
reduce_insert = _impl.reduce_insert
matmul = _impl.matmul
canon_cosets = _impl.canon_cosets


def backend_module(name: str):
    """Return the kernel module for ``name`` ('numba' or 'numpy')."""
    if name == "numpy":
        return _numpy
    if name == "numba" and _numba is not None:
        return _numba
    raise ValueError(f"backend {name!r} unavailable")
