"""Numeric kernels for the spatial clustering hot path.

Two interchangeable backends compute pairwise rectangle gaps and
threshold-graph component labels over (n, 4) float64 [x, y, w, h] arrays:

* ``backend_numba`` — @njit union-find, O(n) memory, default when numba
  imports cleanly;
* ``backend_numpy`` — vectorized fallback, selected by ``IC_NUMBA=0``.

Both produce identical labels (components numbered by first appearance).
``benchmarks/bench_kernels.py`` compares them head to head.
"""

import os

_use_numba = os.environ.get("IC_NUMBA", "1") != "0"
if _use_numba:
    try:
        from .backend_numba import component_labels, rect_gap_matrix

        BACKEND = "numba"
    except ImportError:
        _use_numba = False
if not _use_numba:
    from .backend_numpy import component_labels, rect_gap_matrix

    BACKEND = "numpy"

__all__ = ["component_labels", "rect_gap_matrix", "BACKEND"]
