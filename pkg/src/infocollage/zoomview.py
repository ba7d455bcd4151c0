"""Semantic-zoom view model: clusters with keyword overlays and fade
opacities, per-fragment render states, and citylight indicators pointing at
off-screen clusters.

crossfade_alpha is the opacity of the fragment's full-content rendering; the
favicon shows through at 1 - alpha, so the value is continuous across the
whole zoom range (no pop when the state flips to Favicon at the fade floor).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from . import spatial, textpipe
from .spatial import Viewport
from .textpipe import Label

FULL_CONTENT = "full_content"
FAVICON = "favicon"

_EDGE_TOL = 1e-9


@dataclass(frozen=True)
class ViewParams:
    """Tunables for one view computation.

    readable_scale is the scale where a 12 px capture font reaches a 7 px
    line height on screen; label fading spans [fade_floor * readable_scale,
    readable_scale].
    """

    eps_screen_px: float = spatial.DEFAULT_EPS_SCREEN_PX
    readable_scale: float = 7.0 / 12.0
    fade_floor: float = 0.25
    hull_edge_threshold: float = spatial.DEFAULT_HULL_EDGE_THRESHOLD
    label_count: int = 5


@dataclass(frozen=True)
class RenderState:
    state: str
    crossfade_alpha: float


@dataclass(frozen=True)
class ClusterView:
    key: str
    member_ids: tuple[str, ...]
    hull: tuple[tuple[float, float], ...]
    spline_control: tuple[tuple[float, float], ...]
    labels: tuple[Label, ...]
    label_opacity: float
    similarity_opacity: Optional[float] = None
    shared_keywords: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class Citylight:
    cluster_key: str
    border_anchor: tuple[float, float]
    edge: str
    strength: float


@dataclass(frozen=True)
class ViewModel:
    revision: int
    clusters: tuple[ClusterView, ...]
    fragment_states: dict[str, RenderState]
    citylights: tuple[Citylight, ...]


def fade(scale: float, params: ViewParams = ViewParams()) -> tuple[float, RenderState]:
    """(label_opacity, render state) for one zoom scale; piecewise linear."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    r = scale / params.readable_scale
    floor = params.fade_floor
    if r >= 1.0:
        return 0.0, RenderState(FULL_CONTENT, 1.0)
    if r <= floor:
        return 1.0, RenderState(FAVICON, 0.0)
    span = 1.0 - floor
    return (1.0 - r) / span, RenderState(FULL_CONTENT, (r - floor) / span)


def _rects_intersect(a, b) -> bool:
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    return ax <= bx + bw and bx <= ax + aw and ay <= by + bh and by <= ay + ah


def _citylight(cluster, viewport: Viewport, max_members: int) -> Citylight:
    w = float(viewport.width_px)
    h = float(viewport.height_px)
    cx, cy = w / 2.0, h / 2.0
    tx_, ty_ = viewport.to_screen(*cluster.centroid)
    dx, dy = tx_ - cx, ty_ - cy

    exit_x = float("inf") if dx == 0 else ((w - cx) / dx if dx > 0 else (0.0 - cx) / dx)
    exit_y = float("inf") if dy == 0 else ((h - cy) / dy if dy > 0 else (0.0 - cy) / dy)
    t = min(exit_x, exit_y)
    ax = cx + t * dx
    ay = cy + t * dy
    edge_ns = ""
    edge_ew = ""
    # snap the anchor exactly onto the boundary the exit ray crossed
    if exit_y <= exit_x + _EDGE_TOL:
        ay = h if dy > 0 else 0.0
        edge_ns = "S" if dy > 0 else "N"
    if exit_x <= exit_y + _EDGE_TOL:
        ax = w if dx > 0 else 0.0
        edge_ew = "E" if dx > 0 else "W"
    return Citylight(
        cluster_key=cluster.key,
        border_anchor=(min(max(ax, 0.0), w), min(max(ay, 0.0), h)),
        edge=edge_ns + edge_ew,
        strength=len(cluster.member_ids) / max_members,
    )


def compute_view(
    collage,
    viewport: Viewport,
    params: ViewParams = ViewParams(),
    label_cache: dict | None = None,
) -> ViewModel:
    """Pure function of (collage snapshot, viewport, params).

    label_cache, when given, memoizes keyword extraction keyed by the cluster
    partition and the collage text revision (partitions repeat across pans at
    one zoom level while labels are expensive to recompute).
    """
    placed = sorted(collage.placed_fragments(), key=lambda f: f.id)
    clusters = spatial.cluster_fragments(
        placed, viewport, params.eps_screen_px, params.hull_edge_threshold
    )
    label_opacity, render_state = fade(viewport.scale, params)

    cache_key = (tuple(c.key for c in clusters), collage.text_revision, params.label_count)
    if label_cache is not None and label_cache.get("key") == cache_key:
        labels_by_key = label_cache["labels"]
    else:
        labels_by_key = (
            textpipe.cluster_labels(
                {c.key: sorted(c.member_ids) for c in clusters},
                collage.corpus,
                top_k=params.label_count,
            )
            if clusters
            else {}
        )
        if label_cache is not None:
            label_cache["key"] = cache_key
            label_cache["labels"] = labels_by_key

    viewport_world = viewport.world_rect()
    max_members = max((len(c.member_ids) for c in clusters), default=0)
    cluster_views = []
    citylights = []
    for cluster in clusters:
        hull_screen = tuple(viewport.to_screen(x, y) for x, y in cluster.hull)
        cluster_views.append(
            ClusterView(
                key=cluster.key,
                member_ids=tuple(sorted(cluster.member_ids)),
                hull=hull_screen,
                spline_control=hull_screen,
                labels=tuple(labels_by_key.get(cluster.key, [])),
                label_opacity=label_opacity,
            )
        )
        if not _rects_intersect(cluster.bbox, viewport_world):
            citylights.append(_citylight(cluster, viewport, max_members))

    return ViewModel(
        revision=collage.revision,
        clusters=tuple(cluster_views),
        fragment_states={f.id: render_state for f in placed},
        citylights=tuple(citylights),
    )


def with_overlay(view: ViewModel, overlay) -> ViewModel:
    """Fold a similarity overlay into the cluster views so one ViewModel
    drives rendering."""
    per_cluster = overlay.per_cluster
    clusters = tuple(
        replace(
            c,
            similarity_opacity=per_cluster[c.key].opacity,
            shared_keywords=tuple(per_cluster[c.key].shared),
        )
        if c.key in per_cluster
        else c
        for c in view.clusters
    )
    return replace(view, clusters=clusters)


def view_to_dict(view: ViewModel, viewport: Viewport) -> dict:
    """Wire form of a ViewModel (screen coordinates, CSS pixels)."""
    return {
        "revision": view.revision,
        "viewport": {
            "center": [viewport.center_x, viewport.center_y],
            "scale": viewport.scale,
            "screen_size": [viewport.width_px, viewport.height_px],
        },
        "clusters": [
            {
                "key": c.key,
                "member_ids": list(c.member_ids),
                "hull": [[x, y] for x, y in c.hull],
                "spline_control": [[x, y] for x, y in c.spline_control],
                "labels": [
                    {"stem": l.stem, "display": l.display, "weight": l.weight} for l in c.labels
                ],
                "label_opacity": c.label_opacity,
                "similarity_opacity": c.similarity_opacity,
                "shared_keywords": list(c.shared_keywords) if c.shared_keywords is not None else None,
            }
            for c in view.clusters
        ],
        "fragment_states": {
            fid: {"state": rs.state, "crossfade_alpha": rs.crossfade_alpha}
            for fid, rs in sorted(view.fragment_states.items())
        },
        "citylights": [
            {
                "cluster_key": cl.cluster_key,
                "border_anchor": [cl.border_anchor[0], cl.border_anchor[1]],
                "edge": cl.edge,
                "strength": cl.strength,
            }
            for cl in view.citylights
        ],
    }
