"""Backend selection for the enumeration kernel.

The compiled Cython kernel is used when it was built and the target fits in
64 vertices; otherwise the pure-Python kernel runs.  Setting
``HOMIX_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("HOMIX_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

STATUS_COMPLETE = _kernels_py.STATUS_COMPLETE
STATUS_LIMIT = _kernels_py.STATUS_LIMIT
STATUS_BUDGET = _kernels_py.STATUS_BUDGET


def enumerate_maps(order, later_nbrs, domains, adj_masks, limit, node_budget, count_only=False, backend=None):
    use = backend or BACKEND
    if use == "cython" and _compiled is not None and len(adj_masks) <= 64:
        return _compiled.enumerate_maps(
            order, later_nbrs, domains, adj_masks, limit, node_budget, count_only
        )
    if use == "cython" and _compiled is None and backend == "cython":
        raise RuntimeError("compiled kernel is not available")
    return _kernels_py.enumerate_maps(order, later_nbrs, domains, adj_masks, limit, node_budget, count_only)


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])
