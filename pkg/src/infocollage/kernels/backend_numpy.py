"""Pure-numpy backend: vectorized gap matrix + min-label propagation."""

import numpy as np


def rect_gap_matrix(rects: np.ndarray) -> np.ndarray:
    """(n, n) matrix of minimum distances between closed rectangles.

    rects is (n, 4) float64 rows [x, y, w, h]; overlap or touch gives 0.
    """
    x0 = rects[:, 0]
    y0 = rects[:, 1]
    x1 = x0 + rects[:, 2]
    y1 = y0 + rects[:, 3]
    dx = np.maximum(x0[None, :] - x1[:, None], x0[:, None] - x1[None, :])
    dy = np.maximum(y0[None, :] - y1[:, None], y0[:, None] - y1[None, :])
    np.maximum(dx, 0.0, out=dx)
    np.maximum(dy, 0.0, out=dy)
    return np.hypot(dx, dy)


def component_labels(rects: np.ndarray, eps: float) -> np.ndarray:
    """Connected-component labels of the gap <= eps graph, numbered by
    first appearance (row order)."""
    n = rects.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.int64)
    x0 = rects[:, 0]
    y0 = rects[:, 1]
    x1 = x0 + rects[:, 2]
    y1 = y0 + rects[:, 3]
    dx = np.maximum(x0[None, :] - x1[:, None], x0[:, None] - x1[None, :])
    dy = np.maximum(y0[None, :] - y1[:, None], y0[:, None] - y1[None, :])
    np.maximum(dx, 0.0, out=dx)
    np.maximum(dy, 0.0, out=dy)
    adj = dx * dx + dy * dy <= eps * eps

    labels = np.arange(n, dtype=np.int64)
    while True:
        spread = np.where(adj, labels[None, :], n).min(axis=1)
        merged = np.minimum(labels, spread)
        if np.array_equal(merged, labels):
            break
        labels = merged
    # min member index per component is already first-appearance ordered
    _, canon = np.unique(labels, return_inverse=True)
    return canon.astype(np.int64)
