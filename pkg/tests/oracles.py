"""Independent reference implementations the tests check the engine against.

Geometry leans on shapely (exact rectangle/polygon predicates), graph work is
plain-python BFS, statistics are recomputed from scratch with Counters. None
of this shares code with the production paths it verifies.
"""

from collections import Counter

from shapely.geometry import Point, Polygon, box


def rect_distance(a, b) -> float:
    """Minimum distance between two (x, y, w, h) rectangles."""
    ra = box(a[0], a[1], a[0] + a[2], a[1] + a[3])
    rb = box(b[0], b[1], b[0] + b[2], b[1] + b[3])
    return ra.distance(rb)


def eps_graph_partition(rects, eps) -> set[frozenset[int]]:
    """Brute-force connected components of the gap <= eps graph."""
    n = len(rects)
    adjacent = [
        [rect_distance(rects[i], rects[j]) <= eps for j in range(n)] for i in range(n)
    ]
    seen: set[int] = set()
    parts: set[frozenset[int]] = set()
    for start in range(n):
        if start in seen:
            continue
        component = set()
        stack = [start]
        while stack:
            i = stack.pop()
            if i in component:
                continue
            component.add(i)
            stack.extend(j for j in range(n) if adjacent[i][j] and j not in component)
        seen |= component
        parts.add(frozenset(component))
    return parts


def eps_graph_partition_fast(rects, eps) -> set[frozenset[int]]:
    """Pure-python variant for big sweeps: axis-gap distance + BFS. The gap
    formula itself is validated against shapely in the unit tests."""
    n = len(rects)

    def gap2(a, b):
        dx = max(b[0] - (a[0] + a[2]), a[0] - (b[0] + b[2]), 0.0)
        dy = max(b[1] - (a[1] + a[3]), a[1] - (b[1] + b[3]), 0.0)
        return dx * dx + dy * dy

    eps2 = eps * eps
    adjacent = [[gap2(rects[i], rects[j]) <= eps2 for j in range(n)] for i in range(n)]
    seen: set[int] = set()
    parts: set[frozenset[int]] = set()
    for start in range(n):
        if start in seen:
            continue
        component = set()
        stack = [start]
        while stack:
            i = stack.pop()
            if i in component:
                continue
            component.add(i)
            stack.extend(j for j in range(n) if adjacent[i][j] and j not in component)
        seen |= component
        parts.add(frozenset(component))
    return parts


def point_eps_partition(points, eps) -> set[frozenset[int]]:
    """Same thing over plain points with Euclidean distance."""
    n = len(points)

    def dist(i, j):
        return sum((points[i][k] - points[j][k]) ** 2 for k in range(len(points[i]))) ** 0.5

    seen: set[int] = set()
    parts: set[frozenset[int]] = set()
    for start in range(n):
        if start in seen:
            continue
        component = set()
        stack = [start]
        while stack:
            i = stack.pop()
            if i in component:
                continue
            component.add(i)
            stack.extend(j for j in range(n) if dist(i, j) <= eps and j not in component)
        seen |= component
        parts.add(frozenset(component))
    return parts


def labels_to_partition(labels) -> set[frozenset[int]]:
    groups: dict[int, set[int]] = {}
    for idx, label in enumerate(labels):
        groups.setdefault(int(label), set()).add(idx)
    return {frozenset(g) for g in groups.values()}


def clusters_to_partition(clusters) -> set[frozenset[str]]:
    return {frozenset(c.member_ids) for c in clusters}


def hull_contains(hull, point, tol: float = 1e-9) -> bool:
    """Inside-or-on membership with boundary tolerance."""
    return Polygon(hull).distance(Point(point)) <= tol


def hull_area(hull) -> float:
    return Polygon(hull).area


def convex_hull_area(points) -> float:
    from shapely.geometry import MultiPoint

    return MultiPoint(list(points)).convex_hull.area


def standardize(samples):
    """Population-variance standardization, constant axes dropped."""
    n = len(samples)
    dims = len(samples[0])
    out_axes = []
    for k in range(dims):
        column = [s[k] for s in samples]
        mean = sum(column) / n
        var = sum((v - mean) ** 2 for v in column) / n
        if var > 0:
            out_axes.append([(v - mean) / var**0.5 for v in column])
    return [tuple(axis[i] for axis in out_axes) for i in range(n)]


def corpus_counts(texts: dict[str, str], stems_of) -> tuple[int, dict, dict]:
    """(n_docs, df, tf) recomputed from scratch over the given pipeline."""
    tf = {fid: dict(Counter(stems_of(text))) for fid, text in texts.items()}
    df: Counter = Counter()
    for row in tf.values():
        df.update(row.keys())
    n_docs = sum(1 for row in tf.values() if row)
    return n_docs, dict(df), tf
