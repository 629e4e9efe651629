"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``GRIDCYCLE_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"

if not os.environ.get("GRIDCYCLE_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
else:
    _impl = _pykernels

has_cycle_flat = _impl.has_cycle_flat
count_edges_flat = _impl.count_edges_flat

__all__ = ["BACKEND", "has_cycle_flat", "count_edges_flat"]
