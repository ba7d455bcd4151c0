"""Zoom-dependent spatial clustering of placed fragments and cluster outline
geometry.

Clustering is density-based with minimum cluster size 1 over the minimum
distance between fragment rectangles, which reduces to connected components
of the graph joining pairs closer than the threshold. The threshold is given
in screen pixels and divided by the viewport scale, so zooming out coarsens
the partition. Outlines are concave hulls over the member rectangles' corner
points, dug inward along edges longer than a configurable threshold; the hull
vertices double as the control polygon of a closed Catmull-Rom curve.
"""

from __future__ import annotations

import hashlib
import heapq
import math
from dataclasses import dataclass

import numpy as np

from . import kernels

DEFAULT_EPS_SCREEN_PX = 40.0
DEFAULT_HULL_EDGE_THRESHOLD = 20.0

_TOL = 1e-9


@dataclass(frozen=True)
class Viewport:
    """World-space camera: center point, pixels per world unit, screen size."""

    center_x: float
    center_y: float
    scale: float
    width_px: int
    height_px: int

    def __post_init__(self):
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ValueError("scale must be positive and finite")

    def world_rect(self) -> tuple[float, float, float, float]:
        """(x, y, w, h) of the visible world region."""
        w = self.width_px / self.scale
        h = self.height_px / self.scale
        return (self.center_x - w / 2, self.center_y - h / 2, w, h)

    def to_screen(self, x: float, y: float) -> tuple[float, float]:
        return (
            (x - self.center_x) * self.scale + self.width_px / 2,
            (y - self.center_y) * self.scale + self.height_px / 2,
        )


class Cluster:
    """Spatial grouping of fragments. Hull geometry is computed lazily on
    first access (partitions are needed far more often than outlines) and
    cached; spline_control aliases the hull vertices in order."""

    __slots__ = ("key", "member_ids", "centroid", "bbox", "_rects", "_edge_threshold", "_hull")

    def __init__(self, key, member_ids, centroid, bbox, rects, edge_threshold):
        self.key = key
        self.member_ids = member_ids
        self.centroid = centroid
        self.bbox = bbox
        self._rects = rects
        self._edge_threshold = edge_threshold
        self._hull = None

    @property
    def hull(self) -> tuple[tuple[float, float], ...]:
        if self._hull is None:
            self._hull = tuple(cluster_hull(self._rects, self._edge_threshold))
        return self._hull

    @property
    def spline_control(self) -> tuple[tuple[float, float], ...]:
        return self.hull

    def __repr__(self):
        return f"Cluster(key={self.key!r}, members={sorted(self.member_ids)})"


def rect_min_distance(a, b) -> float:
    """Distance between the closest points of two closed rectangles
    (x, y, w, h); 0 when they intersect or touch."""
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    dx = max(bx - (ax + aw), ax - (bx + bw), 0.0)
    dy = max(by - (ay + ah), ay - (by + bh), 0.0)
    return math.hypot(dx, dy)


def cluster_key(member_ids) -> str:
    """Order-independent stable key so views can correlate clusters across frames."""
    digest = hashlib.sha1(",".join(sorted(member_ids)).encode("utf-8")).hexdigest()
    return digest[:16]


def cluster_fragments(placed_fragments, viewport: Viewport, eps_screen_px: float = DEFAULT_EPS_SCREEN_PX,
                      hull_edge_threshold: float = DEFAULT_HULL_EDGE_THRESHOLD) -> list[Cluster]:
    """Partition placed fragments into proximity clusters for one viewport.

    Fragments need .id, .placement (x/y/width/height) and .captured_at.
    Result order: ascending earliest member capture time, then key.
    """
    if eps_screen_px <= 0:
        raise ValueError("eps_screen_px must be positive")
    fragments = list(placed_fragments)
    if not fragments:
        return []
    eps_world = eps_screen_px / viewport.scale
    rects = np.array(
        [(f.placement.x, f.placement.y, f.placement.width, f.placement.height) for f in fragments],
        dtype=np.float64,
    )
    labels = kernels.component_labels(rects, eps_world)

    groups: dict[int, list[int]] = {}
    for idx, label in enumerate(labels):
        groups.setdefault(int(label), []).append(idx)

    clusters = []
    earliest = {}
    for indices in groups.values():
        members = [fragments[i] for i in indices]
        member_rects = [tuple(rects[i]) for i in indices]
        xs0 = [r[0] for r in member_rects]
        ys0 = [r[1] for r in member_rects]
        xs1 = [r[0] + r[2] for r in member_rects]
        ys1 = [r[1] + r[3] for r in member_rects]
        centroid = (
            sum(r[0] + r[2] / 2 for r in member_rects) / len(member_rects),
            sum(r[1] + r[3] / 2 for r in member_rects) / len(member_rects),
        )
        ids = frozenset(f.id for f in members)
        cluster = Cluster(
            key=cluster_key(ids),
            member_ids=ids,
            centroid=centroid,
            bbox=(min(xs0), min(ys0), max(xs1) - min(xs0), max(ys1) - min(ys0)),
            rects=member_rects,
            edge_threshold=hull_edge_threshold,
        )
        earliest[cluster.key] = min(f.captured_at for f in members)
        clusters.append(cluster)
    clusters.sort(key=lambda c: (earliest[c.key], c.key))
    return clusters


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list[tuple[float, float]]:
    """Monotone chain keeping collinear boundary points as vertices."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) < 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) < 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _seg_point_distance(a, b, p):
    ax, ay = a
    bx, by = b
    px, py = p
    vx, vy = bx - ax, by - ay
    length2 = vx * vx + vy * vy
    if length2 == 0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * vx + (py - ay) * vy) / length2
    t = min(1.0, max(0.0, t))
    return math.hypot(px - (ax + t * vx), py - (ay + t * vy))


def _segments_cross(p1, p2, q1, q2) -> bool:
    """True when the open interiors of the two segments intersect or one
    endpoint falls strictly inside the other segment (shared endpoints ok)."""
    d1 = _cross(q1, q2, p1)
    d2 = _cross(q1, q2, p2)
    d3 = _cross(p1, p2, q1)
    d4 = _cross(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True

    def strictly_on(a, b, p):
        if p == a or p == b:
            return False
        if abs(_cross(a, b, p)) > _TOL:
            return False
        return min(a[0], b[0]) - _TOL <= p[0] <= max(a[0], b[0]) + _TOL and \
            min(a[1], b[1]) - _TOL <= p[1] <= max(a[1], b[1]) + _TOL

    return (
        strictly_on(q1, q2, p1)
        or strictly_on(q1, q2, p2)
        or strictly_on(p1, p2, q1)
        or strictly_on(p1, p2, q2)
    )


def _in_triangle(a, b, c, p) -> bool:
    """Closed-triangle membership with tolerance."""
    d1 = _cross(a, b, p)
    d2 = _cross(b, c, p)
    d3 = _cross(c, a, p)
    has_neg = d1 < -_TOL or d2 < -_TOL or d3 < -_TOL
    has_pos = d1 > _TOL or d2 > _TOL or d3 > _TOL
    return not (has_neg and has_pos)


def _valid_dig(hull, edge_idx, p, all_points):
    """Digging edge (a, b) toward interior point p must not cut off any other
    input point and must keep the polygon simple."""
    a = hull[edge_idx]
    b = hull[(edge_idx + 1) % len(hull)]
    # p has to sit strictly inside the current polygon
    for i in range(len(hull)):
        if _seg_point_distance(hull[i], hull[(i + 1) % len(hull)], p) <= _TOL:
            return False
    lo_x = min(a[0], b[0], p[0]) - _TOL
    hi_x = max(a[0], b[0], p[0]) + _TOL
    lo_y = min(a[1], b[1], p[1]) - _TOL
    hi_y = max(a[1], b[1], p[1]) + _TOL
    for q in all_points:
        if not (lo_x <= q[0] <= hi_x and lo_y <= q[1] <= hi_y):
            continue
        if q == p or q == a or q == b:
            continue
        if not _in_triangle(a, p, b, q):
            continue
        # fine only if q stays on the new boundary
        if _seg_point_distance(a, p, q) <= _TOL or _seg_point_distance(p, b, q) <= _TOL:
            continue
        return False
    for i in range(len(hull)):
        if i == edge_idx:
            continue
        u = hull[i]
        v = hull[(i + 1) % len(hull)]
        # both new edges live inside the triangle bbox; skip far-away edges
        if max(u[0], v[0]) < lo_x or min(u[0], v[0]) > hi_x \
                or max(u[1], v[1]) < lo_y or min(u[1], v[1]) > hi_y:
            continue
        if _segments_cross(a, p, u, v) or _segments_cross(p, b, u, v):
            return False
    return True


MAX_DIG_CANDIDATES = 8


def cluster_hull(member_rects, edge_threshold: float = DEFAULT_HULL_EDGE_THRESHOLD) -> list[tuple[float, float]]:
    """Simple closed polygon over the members' corner points containing all of
    them; single rectangle gives the rectangle itself. Edges longer than
    edge_threshold are dug inward toward the nearest corner point that can be
    reached without excluding any corner."""
    corners = []
    for x, y, w, h in member_rects:
        corners.extend([(float(x), float(y)), (float(x + w), float(y)),
                        (float(x + w), float(y + h)), (float(x), float(y + h))])
    points = sorted(set(corners))
    hull = convex_hull(points)
    if len(hull) < 3:
        return hull
    interior = [p for p in points if p not in set(hull)]

    # Each pass digs the longest over-threshold edge toward one of its nearest
    # candidates, or retires the edge for good; every pass therefore consumes
    # either an interior point or a live edge, bounding the loop.
    dead: set[tuple] = set()
    while interior:
        best_idx = -1
        best_len = edge_threshold
        for i in range(len(hull)):
            a = hull[i]
            b = hull[(i + 1) % len(hull)]
            if (a, b) in dead:
                continue
            d = math.dist(a, b)
            if d > best_len:
                best_idx, best_len = i, d
        if best_idx < 0:
            break
        a = hull[best_idx]
        b = hull[(best_idx + 1) % len(hull)]
        candidates = heapq.nsmallest(
            MAX_DIG_CANDIDATES, interior, key=lambda p: (_seg_point_distance(a, b, p), p)
        )
        for p in candidates:
            if _valid_dig(hull, best_idx, p, points):
                hull.insert(best_idx + 1, p)
                interior.remove(p)
                break
        else:
            dead.add((a, b))
    return hull
