// Wire types for the collage service API (see the repository README).

export interface PlacementWire {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface FragmentWire {
  id: string;
  kind: "text_snippet" | "image" | "document" | "note";
  text: string;
  source_url: string | null;
  source_locator: string | null;
  captured_at: string;
  thumbnail_ref: string | null;
  favicon_ref: string | null;
  placement: PlacementWire | null;
  highlight: boolean;
  container_id: string | null;
}

export interface ContainerWire {
  id: string;
  label: string;
  color: [number, number, number];
  member_ids: string[];
  bounds: PlacementWire;
}

export interface ViewportWire {
  center: [number, number];
  scale: number;
  screen_size: [number, number];
}

export interface CollageFile {
  schema_version: number;
  fragments: Record<string, FragmentWire>;
  containers: Record<string, ContainerWire>;
  inbox: string[];
  viewport: ViewportWire;
}

export interface LabelWire {
  stem: string;
  display: string;
  weight: number;
}

export interface RenderStateWire {
  state: "full_content" | "favicon";
  crossfade_alpha: number;
}

export interface ClusterViewWire {
  key: string;
  member_ids: string[];
  hull: [number, number][];
  spline_control: [number, number][];
  labels: LabelWire[];
  label_opacity: number;
  similarity_opacity: number | null;
  shared_keywords: string[] | null;
}

export interface CitylightWire {
  cluster_key: string;
  border_anchor: [number, number];
  edge: string;
  strength: number;
}

export interface ViewModelWire {
  revision: number;
  viewport: ViewportWire;
  clusters: ClusterViewWire[];
  fragment_states: Record<string, RenderStateWire>;
  citylights: CitylightWire[];
}

export interface ClusterSimilarityWire {
  similarity: number;
  opacity: number;
  shared: string[];
}

export interface OverlayWire {
  selected: string;
  per_cluster: Record<string, ClusterSimilarityWire>;
  per_inbox: Record<string, number>;
}

export interface KwicHitWire {
  fragment_id: string;
  keyword: string;
  context: string;
  match_offset: number;
}
