import type { Camera } from "./camera.js";
import { worldToScreen } from "./camera.js";
import type {
  CollageFile,
  ClusterViewWire,
  FragmentWire,
  OverlayWire,
  ViewModelWire,
} from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, String(v));
  return el;
}

/** Closed uniform Catmull-Rom curve through the control points as an SVG
 * path (cubic Bezier segments), identical to the server's snapshot math. */
export function catmullRomPath(points: [number, number][]): string {
  const n = points.length;
  if (n === 0) return "";
  if (n < 3) {
    return `M ${points.map((p) => `${p[0]},${p[1]}`).join(" L ")} Z`;
  }
  const parts = [`M ${points[0][0]},${points[0][1]}`];
  for (let i = 0; i < n; i++) {
    const p0 = points[(i - 1 + n) % n];
    const p1 = points[i];
    const p2 = points[(i + 1) % n];
    const p3 = points[(i + 2) % n];
    const c1x = p1[0] + (p2[0] - p0[0]) / 6;
    const c1y = p1[1] + (p2[1] - p0[1]) / 6;
    const c2x = p2[0] - (p3[0] - p1[0]) / 6;
    const c2y = p2[1] - (p3[1] - p1[1]) / 6;
    parts.push(`C ${c1x},${c1y} ${c2x},${c2y} ${p2[0]},${p2[1]}`);
  }
  parts.push("Z");
  return parts.join(" ");
}

function fragmentTitle(fragment: FragmentWire): string {
  if (fragment.kind === "image") return "(image)";
  const words = fragment.text.split(/\s+/).slice(0, 12).join(" ");
  return words.length > 80 ? words.slice(0, 77) + "…" : words;
}

export interface RenderCallbacks {
  onFragmentClick?(id: string, event: MouseEvent): void;
  onFragmentDblClick?(id: string): void;
  onClusterClick?(key: string): void;
  onClusterContextMenu?(key: string, event: MouseEvent): void;
  onSharedKeywordHover?(clusterKey: string, stem: string, event: MouseEvent): void;
  onSharedKeywordLeave?(): void;
}

/**
 * Draw one ViewModel into the SVG root: cluster hulls (similarity darkening
 * when an overlay is active), fragment cards or favicons per render state,
 * keyword overlays at their fade opacity, container frames, and citylights.
 * The server is the single source of truth: nothing is clustered, labeled,
 * or scored here.
 */
export function renderView(
  root: SVGSVGElement,
  view: ViewModelWire,
  collage: CollageFile,
  camera: Camera,
  overlay: OverlayWire | null = null,
  callbacks: RenderCallbacks = {},
): void {
  root.innerHTML = "";
  root.setAttribute("viewBox", `0 0 ${camera.width} ${camera.height}`);

  const containerLayer = svgEl("g", { class: "layer-containers" });
  const hullLayer = svgEl("g", { class: "layer-hulls" });
  const fragmentLayer = svgEl("g", { class: "layer-fragments" });
  const labelLayer = svgEl("g", { class: "layer-labels" });
  const lightLayer = svgEl("g", { class: "layer-citylights" });
  root.append(containerLayer, hullLayer, fragmentLayer, labelLayer, lightLayer);

  for (const container of Object.values(collage.containers)) {
    const [x, y] = worldToScreen(camera, container.bounds.x, container.bounds.y);
    const [r, g, b] = container.color;
    const frame = svgEl("rect", {
      class: "container-frame",
      x, y,
      width: container.bounds.width * camera.scale,
      height: container.bounds.height * camera.scale,
      rx: 6,
      fill: "none",
      stroke: `rgb(${r},${g},${b})`,
      "stroke-width": 2,
    });
    containerLayer.append(frame);
    const tag = svgEl("text", { class: "container-label", x: x + 6, y: y - 4 });
    tag.textContent = container.label;
    containerLayer.append(tag);
  }

  for (const cluster of view.clusters) {
    hullLayer.append(renderHull(cluster, overlay, callbacks));
  }

  for (const [id, state] of Object.entries(view.fragment_states)) {
    const fragment = collage.fragments[id];
    if (!fragment || !fragment.placement) continue;
    fragmentLayer.append(renderFragment(fragment, state.state, state.crossfade_alpha, camera, callbacks));
  }

  for (const cluster of view.clusters) {
    renderClusterText(labelLayer, cluster, callbacks);
  }

  for (const light of view.citylights) {
    lightLayer.append(
      svgEl("circle", {
        class: "citylight",
        "data-key": light.cluster_key,
        "data-edge": light.edge,
        cx: light.border_anchor[0],
        cy: light.border_anchor[1],
        r: 6 + 6 * light.strength,
        opacity: 0.25 + 0.5 * light.strength,
      }),
    );
  }
}

function renderHull(
  cluster: ClusterViewWire,
  overlay: OverlayWire | null,
  callbacks: RenderCallbacks,
): SVGPathElement {
  const similarity = overlay?.per_cluster[cluster.key];
  const path = svgEl("path", {
    class: "cluster-hull",
    "data-key": cluster.key,
    d: catmullRomPath(cluster.spline_control),
  });
  if (similarity) {
    path.setAttribute("style", `fill-opacity:${0.1 + similarity.opacity}`);
    path.classList.add("similarity");
  }
  if (overlay && overlay.selected === cluster.key) path.classList.add("selected");
  path.addEventListener("click", () => callbacks.onClusterClick?.(cluster.key));
  path.addEventListener("contextmenu", (e) =>
    callbacks.onClusterContextMenu?.(cluster.key, e as MouseEvent),
  );
  return path;
}

function renderFragment(
  fragment: FragmentWire,
  state: "full_content" | "favicon",
  alpha: number,
  camera: Camera,
  callbacks: RenderCallbacks,
): SVGGElement {
  const p = fragment.placement!;
  const [x, y] = worldToScreen(camera, p.x, p.y);
  const w = p.width * camera.scale;
  const h = p.height * camera.scale;
  const group = svgEl("g", { class: "fragment", "data-id": fragment.id, "data-state": state });
  if (fragment.kind === "note") group.classList.add("note");

  // favicon underneath, full content above at its crossfade opacity
  const faviconVisible = 1 - alpha;
  if (faviconVisible > 0) {
    const cx = x + w / 2;
    const cy = y + h / 2;
    if (fragment.favicon_ref) {
      const icon = svgEl("image", {
        class: "favicon",
        href: fragment.favicon_ref,
        x: cx - 8, y: cy - 8, width: 16, height: 16,
        opacity: faviconVisible,
      });
      group.append(icon);
    } else {
      group.append(
        svgEl("circle", { class: "favicon placeholder", cx, cy, r: 6, opacity: faviconVisible }),
      );
    }
  }
  if (alpha > 0) {
    const card = svgEl("g", { class: "card", opacity: alpha });
    card.append(svgEl("rect", { x, y, width: w, height: h, rx: 3 }));
    if (fragment.thumbnail_ref) {
      card.append(
        svgEl("image", { href: fragment.thumbnail_ref, x, y, width: w, height: h,
          preserveAspectRatio: "xMidYMid slice" }),
      );
    } else {
      const preview = svgEl("text", { x: x + 4, y: y + 14, class: "preview" });
      preview.textContent = fragmentTitle(fragment);
      card.append(preview);
    }
    group.append(card);
  }
  group.addEventListener("click", (e) => callbacks.onFragmentClick?.(fragment.id, e as MouseEvent));
  group.addEventListener("dblclick", () => callbacks.onFragmentDblClick?.(fragment.id));
  return group;
}

function renderClusterText(
  layer: SVGGElement,
  cluster: ClusterViewWire,
  callbacks: RenderCallbacks,
): void {
  const xs = cluster.hull.map((p) => p[0]);
  const ys = cluster.hull.map((p) => p[1]);
  const cx = xs.reduce((a, b) => a + b, 0) / xs.length;
  const top = Math.min(...ys);

  if (cluster.label_opacity > 0) {
    cluster.labels.forEach((label, row) => {
      const text = svgEl("text", {
        class: "cluster-label",
        "data-key": cluster.key,
        x: cx,
        y: top + 16 + row * 15,
        opacity: cluster.label_opacity,
        "text-anchor": "middle",
      });
      text.textContent = label.display;
      layer.append(text);
    });
  }
  if (cluster.shared_keywords && cluster.shared_keywords.length) {
    cluster.shared_keywords.forEach((stem, i) => {
      const chip = svgEl("text", {
        class: "shared-keyword",
        "data-key": cluster.key,
        "data-stem": stem,
        x: cx,
        y: top - 6 - i * 14,
        "text-anchor": "middle",
      });
      chip.textContent = stem;
      chip.addEventListener("mouseenter", (e) =>
        callbacks.onSharedKeywordHover?.(cluster.key, stem, e as MouseEvent),
      );
      chip.addEventListener("mouseleave", () => callbacks.onSharedKeywordLeave?.());
      layer.append(chip);
    });
  }
}

/** Fold a similarity overlay into a served ViewModel (shared keywords land
 * on the target clusters; the selected cluster keeps its plain style). */
export function applyOverlay(view: ViewModelWire, overlay: OverlayWire): ViewModelWire {
  return {
    ...view,
    clusters: view.clusters.map((cluster) => {
      const entry = overlay.per_cluster[cluster.key];
      if (!entry) return cluster;
      return {
        ...cluster,
        similarity_opacity: entry.opacity,
        shared_keywords: entry.shared,
      };
    }),
  };
}
