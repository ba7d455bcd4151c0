"""Numba backend: O(n^2) time, O(n) memory union-find over rectangle pairs."""

import numpy as np
from numba import njit


@njit(cache=True)
def _find(parent, i):
    root = i
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        parent[i], i = root, parent[i]
    return root


@njit(cache=True)
def rect_gap_matrix(rects):
    n = rects.shape[0]
    out = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        ax0 = rects[i, 0]
        ay0 = rects[i, 1]
        ax1 = ax0 + rects[i, 2]
        ay1 = ay0 + rects[i, 3]
        for j in range(i + 1, n):
            bx0 = rects[j, 0]
            by0 = rects[j, 1]
            dx = max(bx0 - ax1, ax0 - (bx0 + rects[j, 2]), 0.0)
            dy = max(by0 - ay1, ay0 - (by0 + rects[j, 3]), 0.0)
            d = np.hypot(dx, dy)
            out[i, j] = d
            out[j, i] = d
    return out


@njit(cache=True)
def component_labels(rects, eps):
    n = rects.shape[0]
    parent = np.arange(n, dtype=np.int64)
    eps2 = eps * eps
    for i in range(n):
        ax0 = rects[i, 0]
        ay0 = rects[i, 1]
        ax1 = ax0 + rects[i, 2]
        ay1 = ay0 + rects[i, 3]
        for j in range(i + 1, n):
            bx0 = rects[j, 0]
            by0 = rects[j, 1]
            dx = max(bx0 - ax1, ax0 - (bx0 + rects[j, 2]), 0.0)
            dy = max(by0 - ay1, ay0 - (by0 + rects[j, 3]), 0.0)
            if dx * dx + dy * dy <= eps2:
                ri = _find(parent, i)
                rj = _find(parent, j)
                if ri != rj:
                    if ri < rj:
                        parent[rj] = ri
                    else:
                        parent[ri] = rj
    labels = np.empty(n, dtype=np.int64)
    remap = np.full(n, -1, dtype=np.int64)
    next_label = 0
    for i in range(n):
        root = _find(parent, i)
        if remap[root] < 0:
            remap[root] = next_label
            next_label += 1
        labels[i] = remap[root]
    return labels
