"""Deterministic SVG rendering of a ViewModel: cluster hulls as closed
Catmull-Rom paths, keyword labels, citylight border glows.

Byte-stable across runs: fixed element order, floats always formatted with
three decimals.
"""

from __future__ import annotations

from .zoomview import ViewModel

LABEL_LINE_HEIGHT = 14.0


def _fmt(value: float) -> str:
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


def _pt(x: float, y: float) -> str:
    return f"{_fmt(x)},{_fmt(y)}"


def catmull_rom_path(points) -> str:
    """Closed uniform Catmull-Rom curve through the control points, emitted
    as cubic Bezier segments."""
    pts = list(points)
    n = len(pts)
    if n == 0:
        return ""
    if n < 3:
        return "M " + " L ".join(_pt(x, y) for x, y in pts) + " Z"
    parts = [f"M {_pt(*pts[0])}"]
    for i in range(n):
        p0 = pts[(i - 1) % n]
        p1 = pts[i]
        p2 = pts[(i + 1) % n]
        p3 = pts[(i + 2) % n]
        c1 = (p1[0] + (p2[0] - p0[0]) / 6.0, p1[1] + (p2[1] - p0[1]) / 6.0)
        c2 = (p2[0] - (p3[0] - p1[0]) / 6.0, p2[1] - (p3[1] - p1[1]) / 6.0)
        parts.append(f"C {_pt(*c1)} {_pt(*c2)} {_pt(*p2)}")
    parts.append("Z")
    return " ".join(parts)


def render_svg(view: ViewModel, width_px: int, height_px: int) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_px}" height="{height_px}" '
        f'viewBox="0 0 {width_px} {height_px}">',
        f'<rect class="backdrop" x="0" y="0" width="{width_px}" height="{height_px}" fill="#fafafa"/>',
    ]
    for cluster in view.clusters:
        style = 'fill="#dbe7f5" stroke="#5b84b1" stroke-width="1.5"'
        if cluster.similarity_opacity is not None:
            style += f' fill-opacity="{_fmt(cluster.similarity_opacity)}"'
        lines.append(
            f'<path class="cluster-hull" d="{catmull_rom_path(cluster.spline_control)}" {style}/>'
        )
    for cluster in view.clusters:
        if not cluster.labels:
            continue
        xs = [p[0] for p in cluster.hull]
        ys = [p[1] for p in cluster.hull]
        cx = sum(xs) / len(xs)
        top = min(ys)
        for row, label in enumerate(cluster.labels):
            lines.append(
                f'<text class="cluster-label" x="{_fmt(cx)}" '
                f'y="{_fmt(top + (row + 1) * LABEL_LINE_HEIGHT)}" '
                f'font-size="12" text-anchor="middle" '
                f'opacity="{_fmt(cluster.label_opacity)}">{_escape(label.display)}</text>'
            )
    for light in view.citylights:
        lines.append(
            f'<circle class="citylight" cx="{_fmt(light.border_anchor[0])}" '
            f'cy="{_fmt(light.border_anchor[1])}" r="{_fmt(6.0 + 6.0 * light.strength)}" '
            f'fill="#f2b135" opacity="{_fmt(0.25 + 0.5 * light.strength)}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
