import type { ViewModelWire } from "./types.js";
import type { ViewQuery } from "./api.js";

/** World-space camera over a fixed-size screen viewport. */
export interface Camera {
  cx: number;
  cy: number;
  scale: number;
  width: number;
  height: number;
}

export function worldToScreen(cam: Camera, wx: number, wy: number): [number, number] {
  return [(wx - cam.cx) * cam.scale + cam.width / 2, (wy - cam.cy) * cam.scale + cam.height / 2];
}

export function screenToWorld(cam: Camera, sx: number, sy: number): [number, number] {
  return [(sx - cam.width / 2) / cam.scale + cam.cx, (sy - cam.height / 2) / cam.scale + cam.cy];
}

/** Zoom by `factor` keeping the world point under (sx, sy) fixed on screen. */
export function zoomAround(cam: Camera, sx: number, sy: number, factor: number): Camera {
  const scale = Math.min(64, Math.max(1 / 1024, cam.scale * factor));
  const [wx, wy] = screenToWorld(cam, sx, sy);
  return {
    ...cam,
    scale,
    cx: wx - (sx - cam.width / 2) / scale,
    cy: wy - (sy - cam.height / 2) / scale,
  };
}

export function panBy(cam: Camera, dxPx: number, dyPx: number): Camera {
  return { ...cam, cx: cam.cx - dxPx / cam.scale, cy: cam.cy - dyPx / cam.scale };
}

export function cameraQuery(cam: Camera, eps?: number): ViewQuery {
  return { cx: cam.cx, cy: cam.cy, scale: cam.scale, w: cam.width, h: cam.height, eps };
}

/**
 * Debounced view fetching: at most one request per `minIntervalMs` (trailing
 * edge keeps the newest camera) and stale responses are dropped by sequence
 * tag, so only the latest requested viewport ever reaches the renderer.
 */
export class ViewScheduler {
  private seq = 0;
  private applied = 0;
  private lastIssued = -Infinity;
  private pending: Camera | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly fetchView: (cam: Camera) => Promise<ViewModelWire>,
    private readonly onView: (view: ViewModelWire, cam: Camera) => void,
    private readonly minIntervalMs = 34,
    private readonly now: () => number = () => Date.now(),
  ) {}

  request(cam: Camera): void {
    this.pending = cam;
    if (this.timer !== null) return;
    const wait = Math.max(0, this.lastIssued + this.minIntervalMs - this.now());
    if (wait === 0) {
      this.issue();
    } else {
      this.timer = setTimeout(() => {
        this.timer = null;
        this.issue();
      }, wait);
    }
  }

  private issue(): void {
    const cam = this.pending;
    if (!cam) return;
    this.pending = null;
    this.lastIssued = this.now();
    const tag = ++this.seq;
    this.fetchView(cam).then(
      (view) => {
        if (tag > this.applied) {
          this.applied = tag;
          this.onView(view, cam);
        }
      },
      () => {
        /* errors on superseded requests are irrelevant; surfaced elsewhere */
      },
    );
  }
}
