"""Kernel backend selection.

Prefers the compiled extension (``connected_cm._kernels``, built with
``python setup.py build_ext --inplace``); falls back to the pure-Python
implementation with identical contracts and random streams.  Set
``CONNECTED_CM_FORCE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

if os.environ.get("CONNECTED_CM_FORCE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND

shuffle_order = _impl.shuffle_order
classify_flags = _impl.classify_flags
giant_type_counts = _impl.giant_type_counts
giant_match_scan = _impl.giant_match_scan
enumerate_counts = _impl.enumerate_counts
component_census = _impl.component_census

FLAG_CONNECTED = 1
FLAG_SIMPLE = 2
