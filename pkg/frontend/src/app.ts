import type { Api, ViewQuery } from "./api.js";
import type { Camera } from "./camera.js";
import { ViewScheduler, cameraQuery, panBy, screenToWorld, zoomAround } from "./camera.js";
import { applyOverlay, renderView } from "./render.js";
import type { CollageFile, FragmentWire, OverlayWire, ViewModelWire } from "./types.js";

const DROP_WIDTH = 160;
const DROP_HEIGHT = 100;
const KWIC_WINDOW = 40;

export interface AppOptions {
  width?: number;
  height?: number;
  eps?: number;
  openUrl?(url: string): void;
  promptText?(message: string): string | null;
}

/**
 * The collage workspace: inbox sidebar, pan/zoom canvas rendering the served
 * ViewModel, selection-driven similarity overlay, KWIC hovers, context-menu
 * web search, and source-link navigation. All analysis comes from the API.
 */
export class CollageApp {
  camera: Camera;
  collage: CollageFile | null = null;
  view: ViewModelWire | null = null;
  overlay: OverlayWire | null = null;
  selection = new Set<string>();

  readonly canvas: SVGSVGElement;
  readonly inboxEl: HTMLElement;
  readonly kwicBox: HTMLElement;
  readonly menuEl: HTMLElement;

  private readonly scheduler: ViewScheduler;
  private readonly openUrl: (url: string) => void;
  private readonly promptText: (message: string) => string | null;
  private panning: { x: number; y: number } | null = null;

  constructor(
    readonly root: HTMLElement,
    readonly api: Api,
    readonly options: AppOptions = {},
  ) {
    this.camera = {
      cx: 0,
      cy: 0,
      scale: 1,
      width: options.width ?? 1200,
      height: options.height ?? 800,
    };
    this.openUrl = options.openUrl ?? ((url) => window.open(url, "_blank"));
    this.promptText = options.promptText ?? ((message) => window.prompt(message));

    root.innerHTML = `
      <div class="app">
        <aside class="inbox"><h2>Inbox</h2><ul class="inbox-list"></ul></aside>
        <main class="canvas-wrap">
          <div class="toolbar">
            <button class="group-btn" title="group selected fragments">Group</button>
          </div>
          <svg class="canvas" width="${this.camera.width}" height="${this.camera.height}"></svg>
          <div class="kwic-box" hidden></div>
          <div class="context-menu" hidden></div>
        </main>
      </div>`;
    this.canvas = root.querySelector("svg.canvas") as SVGSVGElement;
    this.inboxEl = root.querySelector(".inbox-list") as HTMLElement;
    this.kwicBox = root.querySelector(".kwic-box") as HTMLElement;
    this.menuEl = root.querySelector(".context-menu") as HTMLElement;

    this.scheduler = new ViewScheduler(
      (cam) => this.api.getView(this.query(cam)),
      (view) => {
        this.view = view;
        this.render();
      },
    );
    this.bindCanvasEvents();
    (root.querySelector(".group-btn") as HTMLElement).addEventListener("click", () => {
      void this.groupSelection();
    });
  }

  query(cam: Camera = this.camera): ViewQuery {
    return cameraQuery(cam, this.options.eps);
  }

  async load(): Promise<void> {
    this.collage = await this.api.getCollage();
    const [cx, cy] = this.collage.viewport.center;
    this.camera = { ...this.camera, cx, cy, scale: this.collage.viewport.scale };
    await this.refreshInbox();
    this.view = await this.api.getView(this.query());
    this.render();
    void this.api.postEvent("collage_access");
  }

  async refresh(): Promise<void> {
    this.collage = await this.api.getCollage();
    await this.refreshInbox();
    this.view = await this.api.getView(this.query());
    this.render();
  }

  async refreshInbox(): Promise<void> {
    const { inbox } = await this.api.getInbox();
    this.inboxEl.innerHTML = "";
    for (const fragment of inbox) {
      this.inboxEl.append(this.inboxCard(fragment));
    }
  }

  private inboxCard(fragment: FragmentWire): HTMLLIElement {
    const li = document.createElement("li");
    li.className = "inbox-card";
    li.draggable = true;
    li.dataset.id = fragment.id;
    const domain = fragment.source_url ? new URL(fragment.source_url).hostname : "note";
    li.innerHTML = `
      <span class="thumb">${fragment.thumbnail_ref ? `<img src="${fragment.thumbnail_ref}">` : ""}</span>
      <span class="title"></span>
      <span class="meta">${domain} · ${fragment.captured_at.slice(0, 16).replace("T", " ")}</span>`;
    (li.querySelector(".title") as HTMLElement).textContent =
      fragment.text.split(/\s+/).slice(0, 8).join(" ") || "(image)";
    li.addEventListener("dragstart", (event) => {
      (event as DragEvent).dataTransfer?.setData("text/fragment-id", fragment.id);
    });
    li.addEventListener("click", () => {
      void this.selectItem(fragment.id);
    });
    return li;
  }

  private bindCanvasEvents(): void {
    this.canvas.addEventListener("wheel", (event) => {
      event.preventDefault();
      const e = event as WheelEvent;
      const factor = Math.exp(-e.deltaY / 400);
      this.camera = zoomAround(this.camera, e.offsetX, e.offsetY, factor);
      this.requestView();
    });
    this.canvas.addEventListener("mousedown", (event) => {
      const e = event as MouseEvent;
      if (e.button === 0 && e.target === this.canvas) {
        this.panning = { x: e.clientX, y: e.clientY };
      }
    });
    this.canvas.addEventListener("mousemove", (event) => {
      if (!this.panning) return;
      const e = event as MouseEvent;
      this.camera = panBy(this.camera, e.clientX - this.panning.x, e.clientY - this.panning.y);
      this.panning = { x: e.clientX, y: e.clientY };
      this.requestView();
    });
    this.canvas.addEventListener("mouseup", () => {
      this.panning = null;
    });
    this.canvas.addEventListener("dragover", (event) => event.preventDefault());
    this.canvas.addEventListener("drop", (event) => {
      event.preventDefault();
      const e = event as DragEvent;
      const id = e.dataTransfer?.getData("text/fragment-id");
      if (id) void this.handleInboxDrop(id, e.offsetX, e.offsetY);
    });
    this.canvas.addEventListener("dblclick", (event) => {
      const e = event as MouseEvent;
      if (e.target === this.canvas) void this.createNoteAt(e.offsetX, e.offsetY);
    });
    this.canvas.addEventListener("click", () => this.hideMenu());
  }

  requestView(): void {
    this.scheduler.request(this.camera);
  }

  /** Drop an inbox card at screen position (sx, sy): persists the placement
   * through the API, then re-reads server state. */
  async handleInboxDrop(fragmentId: string, sx: number, sy: number): Promise<void> {
    const [wx, wy] = screenToWorld(this.camera, sx, sy);
    await this.api.placeFragment(fragmentId, {
      x: wx - DROP_WIDTH / 2 / this.camera.scale,
      y: wy - DROP_HEIGHT / 2 / this.camera.scale,
      width: DROP_WIDTH / this.camera.scale,
      height: DROP_HEIGHT / this.camera.scale,
    });
    await this.refresh();
  }

  async createNoteAt(sx: number, sy: number): Promise<void> {
    const text = this.promptText("Note text:");
    if (!text) return;
    const [wx, wy] = screenToWorld(this.camera, sx, sy);
    await this.api.createNote(text, {
      x: wx,
      y: wy,
      width: DROP_WIDTH / this.camera.scale,
      height: DROP_HEIGHT / this.camera.scale,
    });
    await this.refresh();
  }

  async groupSelection(): Promise<void> {
    if (this.selection.size === 0) return;
    const label = this.promptText("Container label:");
    if (!label) return;
    await this.api.createContainer(label, [240, 180, 60], [...this.selection]);
    this.selection.clear();
    await this.refresh();
  }

  /** Click on a fragment, inbox card, or cluster: fetch and apply the
   * similarity overlay. */
  async selectItem(selected: string): Promise<void> {
    this.overlay = await this.api.select(selected, this.query());
    this.render();
  }

  async followSource(fragmentId: string): Promise<void> {
    const fragment = this.collage?.fragments[fragmentId];
    if (!fragment || !fragment.source_url) return;
    this.openUrl(fragment.source_url);
    void this.api.postEvent("source_revisit");
  }

  async showKwic(clusterKey: string, stem: string): Promise<void> {
    const cluster = this.view?.clusters.find((c) => c.key === clusterKey);
    if (!cluster) return;
    const contexts: string[] = [];
    for (const memberId of cluster.member_ids) {
      const { hits } = await this.api.kwic(memberId, stem, KWIC_WINDOW);
      for (const hit of hits) contexts.push(hit.context);
    }
    this.kwicBox.innerHTML = "";
    for (const context of contexts) {
      const row = document.createElement("div");
      row.className = "kwic-hit";
      row.textContent = `…${context}…`;
      this.kwicBox.append(row);
    }
    this.kwicBox.hidden = contexts.length === 0;
  }

  hideKwic(): void {
    this.kwicBox.hidden = true;
  }

  async openClusterSearch(clusterKey: string): Promise<void> {
    const { url } = await this.api.searchUrl(clusterKey, this.query());
    this.openUrl(url);
    this.hideMenu();
  }

  showMenu(clusterKey: string, x: number, y: number): void {
    this.menuEl.innerHTML = "";
    const item = document.createElement("button");
    item.className = "menu-search";
    item.textContent = "Search related";
    item.addEventListener("click", () => void this.openClusterSearch(clusterKey));
    this.menuEl.append(item);
    this.menuEl.style.left = `${x}px`;
    this.menuEl.style.top = `${y}px`;
    this.menuEl.hidden = false;
  }

  hideMenu(): void {
    this.menuEl.hidden = true;
  }

  render(): void {
    if (!this.view || !this.collage) return;
    const view = this.overlay ? applyOverlay(this.view, this.overlay) : this.view;
    renderView(this.canvas, view, this.collage, this.camera, this.overlay, {
      onFragmentClick: (id, event) => {
        if (event.shiftKey) {
          this.selection.add(id);
          return;
        }
        this.selection = new Set([id]);
        void this.selectItem(id);
      },
      onFragmentDblClick: (id) => void this.followSource(id),
      onClusterClick: (key) => void this.selectItem(key),
      onClusterContextMenu: (key, event) => {
        event.preventDefault();
        this.showMenu(key, event.offsetX, event.offsetY);
      },
      onSharedKeywordHover: (key, stem) => void this.showKwic(key, stem),
      onSharedKeywordLeave: () => this.hideKwic(),
    });
  }
}
