"""Local HTTP facade over the engine, consumed by the browser UI and the CLI.

Writes funnel through one lock and optionally carry an expected revision for
optimistic concurrency (stale writes get 409 and change nothing). Reads work
on snapshots. View computations are serialized through a gate where the
newest requested viewport wins; responses echo the viewport actually
rendered so clients can discard stale answers.
"""

from __future__ import annotations

import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import analytics, explore, textpipe, webingest, zoomview
from .errors import (
    CollageError,
    DegenerateAxis,
    EmptyText,
    IoFailure,
    MemberInInbox,
    MissingSource,
    NoLabels,
    NonMonotoneTimestamp,
    NonPositiveExtent,
    NoSource,
    RevisionConflict,
    SchemaVersionMismatch,
    UndefinedIdf,
    UnknownId,
    UnknownSelection,
    ValidationFailure,
)
from .spatial import Viewport
from .store import CollageStore, Kind, Placement, fragment_to_dict, from_dict, to_dict
from .zoomview import ViewParams

DEFAULT_PORT = 8642
DEFAULT_DATA_FILE = "collage.json"

ERROR_STATUS = {
    UnknownId: 404,
    NoSource: 404,
    UnknownSelection: 404,
    RevisionConflict: 409,
    MissingSource: 400,
    EmptyText: 400,
    NonPositiveExtent: 400,
    MemberInInbox: 400,
    ValidationFailure: 400,
    SchemaVersionMismatch: 400,
    NoLabels: 400,
    NonMonotoneTimestamp: 400,
    DegenerateAxis: 400,
    UndefinedIdf: 500,
    IoFailure: 500,
}


class PlacementBody(BaseModel):
    x: float
    y: float
    width: float
    height: float
    expected_revision: Optional[int] = None


class IngestBody(BaseModel):
    kind: str
    text: str = ""
    source_url: Optional[str] = None
    source_locator: Optional[str] = None
    thumbnail_ref: Optional[str] = None
    favicon_ref: Optional[str] = None
    expected_revision: Optional[int] = None


class FromUrlBody(BaseModel):
    url: str
    expected_revision: Optional[int] = None


class NoteBody(BaseModel):
    text: str
    placement: dict
    expected_revision: Optional[int] = None


class ContainerBody(BaseModel):
    label: str
    color: list[int]
    member_ids: list[str]
    expected_revision: Optional[int] = None


class SelectBody(BaseModel):
    selected: str
    center: Optional[list[float]] = None
    scale: Optional[float] = None
    screen_size: Optional[list[int]] = None
    eps: Optional[float] = None


class EventBody(BaseModel):
    type: str


class _ViewGate:
    """At most one view computation in flight; queued requests recompute with
    the newest parameters seen so far instead of their own stale ones."""

    def __init__(self):
        self._work = threading.Lock()
        self._state = threading.Lock()
        self._newest = None

    def run(self, params, compute):
        with self._state:
            self._newest = params
        with self._work:
            with self._state:
                params = self._newest
            return compute(params)


def create_app(
    store: CollageStore,
    *,
    data_path: str | Path | None = None,
    events_path: str | Path | None = None,
    default_eps: float = 40.0,
    fetch=webingest.fetch_page,
    ui_dir: str | Path | None = None,
    user_key: str = "local",
) -> FastAPI:
    app = FastAPI(title="infocollage", docs_url=None, redoc_url=None)
    lock = threading.RLock()
    label_cache: dict = {}
    view_gate = _ViewGate()
    params_defaults = ViewParams(eps_screen_px=default_eps)

    def persist() -> None:
        if data_path is not None:
            store.save(data_path)

    def log_event(event_type: str) -> None:
        if events_path is not None:
            analytics.append_event(
                events_path,
                analytics.ActivityEvent(datetime.now(timezone.utc), user_key, event_type),
            )

    def viewport_from(
        cx: float | None, cy: float | None, scale: float | None,
        w: int | None, h: int | None,
    ) -> Viewport:
        stored = store.collage.viewport
        try:
            return Viewport(
                center_x=stored.center_x if cx is None else cx,
                center_y=stored.center_y if cy is None else cy,
                scale=stored.scale if scale is None else scale,
                width_px=stored.width_px if w is None else w,
                height_px=stored.height_px if h is None else h,
            )
        except ValueError as exc:
            raise ValidationFailure(str(exc)) from exc

    def view_params(eps: float | None) -> ViewParams:
        if eps is None:
            return params_defaults
        if eps <= 0:
            raise ValidationFailure("eps must be positive")
        return ViewParams(eps_screen_px=eps)

    @app.exception_handler(CollageError)
    async def collage_error_handler(request: Request, exc: CollageError):
        status = ERROR_STATUS.get(type(exc), 500)
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def request_validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "ValidationFailure", "detail": str(exc.errors())},
        )

    # ------------------------------------------------------------------
    # fragments
    # ------------------------------------------------------------------

    @app.post("/fragments")
    def ingest_fragment(body: IngestBody):
        with lock:
            store.check_revision(body.expected_revision)
            fragment_id = store.ingest_fragment(
                kind=body.kind,
                text=body.text,
                source_url=body.source_url,
                source_locator=body.source_locator,
                thumbnail_ref=body.thumbnail_ref,
                favicon_ref=body.favicon_ref,
            )
            persist()
            revision = store.collage.revision
        log_event("fragment_created")
        return {"id": fragment_id, "revision": revision}

    @app.post("/fragments/from-url")
    def ingest_from_url(body: FromUrlBody):
        html = fetch(body.url)
        text = webingest.extract_text(html)
        favicon = webingest.find_favicon(html, body.url)
        with lock:
            store.check_revision(body.expected_revision)
            fragment_id = store.ingest_fragment(
                kind=Kind.DOCUMENT,
                text=text,
                source_url=body.url,
                favicon_ref=favicon,
            )
            persist()
            revision = store.collage.revision
        log_event("fragment_created")
        return {"id": fragment_id, "revision": revision}

    @app.post("/fragments/{fragment_id}/placement")
    def place_fragment(fragment_id: str, body: PlacementBody):
        with lock:
            store.check_revision(body.expected_revision)
            store.place_fragment(
                fragment_id,
                Placement(x=body.x, y=body.y, width=body.width, height=body.height),
            )
            persist()
            return {"revision": store.collage.revision}

    @app.delete("/fragments/{fragment_id}")
    def delete_fragment(fragment_id: str, expected_revision: Optional[int] = Query(None)):
        with lock:
            store.check_revision(expected_revision)
            store.delete_fragment(fragment_id)
            persist()
            return {"revision": store.collage.revision}

    @app.post("/notes")
    def create_note(body: NoteBody):
        placement = _parse_placement_payload(body.placement)
        with lock:
            store.check_revision(body.expected_revision)
            fragment_id = store.create_note(body.text, placement)
            persist()
            revision = store.collage.revision
        log_event("fragment_created")
        return {"id": fragment_id, "revision": revision}

    @app.post("/containers")
    def create_container(body: ContainerBody):
        if len(body.color) != 3 or not all(0 <= v <= 255 for v in body.color):
            raise ValidationFailure("color must be an RGB triple of 0..255 ints")
        with lock:
            store.check_revision(body.expected_revision)
            container_id = store.create_container(body.label, tuple(body.color), body.member_ids)
            persist()
            return {"id": container_id, "revision": store.collage.revision}

    # ------------------------------------------------------------------
    # reads
    # ------------------------------------------------------------------

    @app.get("/inbox")
    def get_inbox():
        with lock:
            return {"inbox": [fragment_to_dict(f) for f in store.collage.inbox_fragments()]}

    @app.get("/fragments/{fragment_id}/source")
    def get_source(fragment_id: str):
        with lock:
            url, locator = store.source_link(fragment_id)
        return {"source_url": url, "source_locator": locator}

    @app.get("/view")
    def get_view(
        cx: Optional[float] = None,
        cy: Optional[float] = None,
        scale: Optional[float] = None,
        w: Optional[int] = None,
        h: Optional[int] = None,
        eps: Optional[float] = None,
    ):
        with lock:
            viewport = viewport_from(cx, cy, scale, w, h)
            params = view_params(eps)
            snapshot = store.snapshot()

        def compute(args):
            viewport_, params_ = args
            view = zoomview.compute_view(snapshot, viewport_, params_, label_cache)
            return zoomview.view_to_dict(view, viewport_)

        return view_gate.run((viewport, params), compute)

    @app.post("/select")
    def post_select(body: SelectBody):
        with lock:
            viewport = viewport_from(
                body.center[0] if body.center else None,
                body.center[1] if body.center else None,
                body.scale,
                body.screen_size[0] if body.screen_size else None,
                body.screen_size[1] if body.screen_size else None,
            )
            params = view_params(body.eps)
            snapshot = store.snapshot()
        clusters = zoomview.compute_view(snapshot, viewport, params, label_cache).clusters
        overlay = explore.select(snapshot, clusters, body.selected)
        return {
            "selected": overlay.selected,
            "per_cluster": {
                key: {
                    "similarity": cs.similarity,
                    "opacity": cs.opacity,
                    "shared": list(cs.shared),
                }
                for key, cs in sorted(overlay.per_cluster.items())
            },
            "per_inbox": {fid: sim for fid, sim in sorted(overlay.per_inbox.items())},
        }

    @app.get("/kwic")
    def get_kwic(fragment: str, stem: str, window: int = 40):
        with lock:
            if fragment not in store.collage.fragments:
                raise UnknownId(f"no fragment {fragment!r}")
            text = store.collage.fragments[fragment].text
        hits = textpipe.kwic(fragment, text, stem, window)
        return {
            "hits": [
                {
                    "fragment_id": h.fragment_id,
                    "keyword": h.keyword,
                    "context": h.context,
                    "match_offset": h.match_offset,
                }
                for h in hits
            ]
        }

    @app.get("/search-url")
    def get_search_url(
        cluster: str,
        cx: Optional[float] = None,
        cy: Optional[float] = None,
        scale: Optional[float] = None,
        w: Optional[int] = None,
        h: Optional[int] = None,
        eps: Optional[float] = None,
    ):
        with lock:
            viewport = viewport_from(cx, cy, scale, w, h)
            params = view_params(eps)
            snapshot = store.snapshot()
        view = zoomview.compute_view(snapshot, viewport, params, label_cache)
        for cluster_view in view.clusters:
            if cluster_view.key == cluster:
                return {"url": explore.search_url(cluster_view.labels)}
        raise UnknownSelection(f"no cluster {cluster!r} in the current view")

    # ------------------------------------------------------------------
    # persistence + analytics
    # ------------------------------------------------------------------

    @app.get("/collage")
    def get_collage():
        with lock:
            return to_dict(store.collage)

    @app.put("/collage")
    def put_collage(body: dict):
        with lock:
            store.replace(from_dict(body))
            persist()
            return {"revision": store.collage.revision}

    @app.post("/events")
    def post_event(body: EventBody):
        if body.type not in analytics.EVENT_TYPES:
            raise ValidationFailure(f"unknown event type {body.type!r}")
        log_event(body.type)
        return {"ok": True}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def _parse_placement_payload(obj: dict) -> Placement:
    if not isinstance(obj, dict) or set(obj) - {"x", "y", "width", "height"}:
        raise ValidationFailure("placement must be {x, y, width, height}")
    try:
        return Placement(
            x=float(obj["x"]), y=float(obj["y"]),
            width=float(obj["width"]), height=float(obj["height"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationFailure(f"bad placement: {exc}") from exc
