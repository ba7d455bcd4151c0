import type {
  CollageFile,
  FragmentWire,
  KwicHitWire,
  OverlayWire,
  PlacementWire,
  ViewModelWire,
} from "./types.js";

export interface ViewQuery {
  cx: number;
  cy: number;
  scale: number;
  w: number;
  h: number;
  eps?: number;
}

/** Everything the app needs from the backend; the tests substitute a
 * fixture-backed fake with the same shape. */
export interface Api {
  getCollage(): Promise<CollageFile>;
  putCollage(data: CollageFile): Promise<{ revision: number }>;
  getInbox(): Promise<{ inbox: FragmentWire[] }>;
  getView(query: ViewQuery): Promise<ViewModelWire>;
  placeFragment(id: string, placement: PlacementWire, expectedRevision?: number): Promise<{ revision: number }>;
  deleteFragment(id: string): Promise<{ revision: number }>;
  createNote(text: string, placement: PlacementWire): Promise<{ id: string; revision: number }>;
  createContainer(label: string, color: [number, number, number], memberIds: string[]): Promise<{ id: string; revision: number }>;
  select(selected: string, query: ViewQuery): Promise<OverlayWire>;
  kwic(fragment: string, stem: string, window: number): Promise<{ hits: KwicHitWire[] }>;
  searchUrl(cluster: string, query: ViewQuery): Promise<{ url: string }>;
  getSource(id: string): Promise<{ source_url: string; source_locator: string | null }>;
  postEvent(type: "collage_access" | "source_revisit" | "fragment_created"): Promise<void>;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(`${status}: ${message}`);
  }
}

function viewParams(query: ViewQuery): URLSearchParams {
  const params = new URLSearchParams({
    cx: String(query.cx),
    cy: String(query.cy),
    scale: String(query.scale),
    w: String(Math.round(query.w)),
    h: String(Math.round(query.h)),
  });
  if (query.eps !== undefined) params.set("eps", String(query.eps));
  return params;
}

export class ApiClient implements Api {
  constructor(
    private readonly base = "",
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async call<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) throw new ApiError(response.status, await response.text());
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.call<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getCollage(): Promise<CollageFile> {
    return this.call("/collage");
  }

  putCollage(data: CollageFile): Promise<{ revision: number }> {
    return this.call("/collage", {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(data),
    });
  }

  getInbox(): Promise<{ inbox: FragmentWire[] }> {
    return this.call("/inbox");
  }

  getView(query: ViewQuery): Promise<ViewModelWire> {
    return this.call(`/view?${viewParams(query)}`);
  }

  placeFragment(id: string, placement: PlacementWire, expectedRevision?: number) {
    return this.post<{ revision: number }>(`/fragments/${id}/placement`, {
      ...placement,
      ...(expectedRevision !== undefined ? { expected_revision: expectedRevision } : {}),
    });
  }

  deleteFragment(id: string): Promise<{ revision: number }> {
    return this.call(`/fragments/${id}`, { method: "DELETE" });
  }

  createNote(text: string, placement: PlacementWire) {
    return this.post<{ id: string; revision: number }>("/notes", { text, placement });
  }

  createContainer(label: string, color: [number, number, number], memberIds: string[]) {
    return this.post<{ id: string; revision: number }>("/containers", {
      label,
      color,
      member_ids: memberIds,
    });
  }

  select(selected: string, query: ViewQuery): Promise<OverlayWire> {
    return this.post("/select", {
      selected,
      center: [query.cx, query.cy],
      scale: query.scale,
      screen_size: [Math.round(query.w), Math.round(query.h)],
      ...(query.eps !== undefined ? { eps: query.eps } : {}),
    });
  }

  kwic(fragment: string, stem: string, window: number): Promise<{ hits: KwicHitWire[] }> {
    const params = new URLSearchParams({ fragment, stem, window: String(window) });
    return this.call(`/kwic?${params}`);
  }

  searchUrl(cluster: string, query: ViewQuery): Promise<{ url: string }> {
    const params = viewParams(query);
    params.set("cluster", cluster);
    return this.call(`/search-url?${params}`);
  }

  getSource(id: string): Promise<{ source_url: string; source_locator: string | null }> {
    return this.call(`/fragments/${id}/source`);
  }

  async postEvent(type: "collage_access" | "source_revisit" | "fragment_created"): Promise<void> {
    await this.post("/events", { type });
  }
}
