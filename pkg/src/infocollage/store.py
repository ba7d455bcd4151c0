"""Persistent collage data model: fragments, notes, containers, inbox order,
provenance, placement, and the JSON file format.

All mutations go through CollageStore (single writer). Reads can take
`snapshot()` copies and hand them to other threads. Every mutation bumps
`revision`; text-affecting mutations additionally bump `text_revision`,
which keys keyword-label caches.
"""

from __future__ import annotations

import copy
import json
import math
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

from . import textpipe
from .errors import (
    EmptyText,
    IoFailure,
    MemberInInbox,
    MissingSource,
    NonPositiveExtent,
    NoSource,
    RevisionConflict,
    SchemaVersionMismatch,
    UnknownId,
    ValidationFailure,
)
from .spatial import Viewport
from .textpipe import CorpusStats

SCHEMA_VERSION = 1
CONTAINER_PADDING = 5.0

DEFAULT_VIEWPORT = Viewport(center_x=0.0, center_y=0.0, scale=1.0, width_px=1280, height_px=800)


class Kind(str, Enum):
    TEXT_SNIPPET = "text_snippet"
    IMAGE = "image"
    DOCUMENT = "document"
    NOTE = "note"


TEXT_KINDS = frozenset({Kind.TEXT_SNIPPET, Kind.DOCUMENT, Kind.NOTE})


@dataclass(frozen=True)
class Placement:
    """World-space rectangle: top-left corner plus positive extents."""

    x: float
    y: float
    width: float
    height: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.width, self.height)):
            raise ValidationFailure("placement coordinates must be finite")
        if self.width <= 0 or self.height <= 0:
            raise NonPositiveExtent("placement extents must be positive")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x, self.y, self.width, self.height)


@dataclass
class Fragment:
    id: str
    kind: Kind
    text: str
    source_url: str | None
    source_locator: str | None
    captured_at: datetime
    thumbnail_ref: str | None = None
    favicon_ref: str | None = None
    placement: Placement | None = None
    highlight: bool = False
    container_id: str | None = None


@dataclass
class Container:
    id: str
    label: str
    color: tuple[int, int, int]
    member_ids: set[str]
    bounds: Placement


@dataclass
class Collage:
    fragments: dict[str, Fragment] = field(default_factory=dict)
    containers: dict[str, Container] = field(default_factory=dict)
    inbox: list[str] = field(default_factory=list)
    corpus: CorpusStats = field(default_factory=CorpusStats)
    viewport: Viewport = DEFAULT_VIEWPORT
    revision: int = 0
    text_revision: int = 0

    def placed_fragments(self) -> list[Fragment]:
        return [f for f in self.fragments.values() if f.placement is not None]

    def inbox_fragments(self) -> list[Fragment]:
        return [self.fragments[i] for i in self.inbox]


_ID_RE = re.compile(r"^[fc](\d+)$")


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


class CollageStore:
    """Owns one Collage and serializes every mutation through itself."""

    def __init__(self, collage: Collage | None = None, clock=None):
        self._clock = clock or _utc_now
        self.replace(collage if collage is not None else Collage())

    def replace(self, collage: Collage) -> None:
        """Swap in a validated collage and re-derive id/time watermarks."""
        self.collage = collage
        self._next_fragment = 1 + max(
            (int(m.group(1)) for i in collage.fragments if (m := _ID_RE.match(i))),
            default=0,
        )
        self._next_container = 1 + max(
            (int(m.group(1)) for i in collage.containers if (m := _ID_RE.match(i))),
            default=0,
        )
        self._last_captured = max(
            (f.captured_at for f in collage.fragments.values()),
            default=datetime.min.replace(tzinfo=timezone.utc),
        )

    # ------------------------------------------------------------------
    # mutations
    # ------------------------------------------------------------------

    def check_revision(self, expected: int | None) -> None:
        if expected is not None and expected != self.collage.revision:
            raise RevisionConflict(
                f"expected revision {expected}, store is at {self.collage.revision}"
            )

    def _bump(self, text_changed: bool = False) -> None:
        self.collage.revision += 1
        if text_changed:
            self.collage.text_revision += 1

    def _capture_time(self) -> datetime:
        now = self._clock()
        if now.tzinfo is None:
            now = now.replace(tzinfo=timezone.utc)
        self._last_captured = max(self._last_captured, now)
        return self._last_captured

    def ingest_fragment(
        self,
        kind: Kind | str,
        text: str,
        source_url: str | None = None,
        source_locator: str | None = None,
        thumbnail_ref: str | None = None,
        favicon_ref: str | None = None,
    ) -> str:
        try:
            kind = Kind(kind)
        except ValueError:
            raise ValidationFailure(f"unknown fragment kind {kind!r}") from None
        if kind is Kind.NOTE:
            if source_url is not None:
                raise ValidationFailure("notes carry no source URL")
        elif source_url is None:
            raise MissingSource(f"{kind.value} fragments need a source URL")
        if kind in TEXT_KINDS and not text.strip():
            raise EmptyText(f"{kind.value} fragments need non-empty text")

        fragment_id = f"f{self._next_fragment}"
        self._next_fragment += 1
        fragment = Fragment(
            id=fragment_id,
            kind=kind,
            text=text,
            source_url=source_url,
            source_locator=source_locator,
            captured_at=self._capture_time(),
            thumbnail_ref=thumbnail_ref,
            favicon_ref=favicon_ref,
        )
        self.collage.fragments[fragment_id] = fragment
        self.collage.inbox.append(fragment_id)
        textpipe.on_fragment_added(self.collage.corpus, fragment_id, text)
        self._bump(text_changed=True)
        return fragment_id

    def create_note(self, text: str, placement: Placement) -> str:
        if not text.strip():
            raise EmptyText("notes need non-empty text")
        fragment_id = f"f{self._next_fragment}"
        self._next_fragment += 1
        self.collage.fragments[fragment_id] = Fragment(
            id=fragment_id,
            kind=Kind.NOTE,
            text=text,
            source_url=None,
            source_locator=None,
            captured_at=self._capture_time(),
            placement=placement,
        )
        textpipe.on_fragment_added(self.collage.corpus, fragment_id, text)
        self._bump(text_changed=True)
        return fragment_id

    def place_fragment(self, fragment_id: str, placement: Placement) -> None:
        fragment = self._fragment(fragment_id)
        fragment.placement = placement
        if fragment_id in self.collage.inbox:
            self.collage.inbox.remove(fragment_id)
        if fragment.container_id:
            self._refit_container(fragment.container_id)
        self._bump()

    def create_container(self, label: str, color: tuple[int, int, int], member_ids) -> str:
        members = [self._fragment(i) for i in member_ids]
        if not members:
            raise ValidationFailure("containers need at least one member")
        for m in members:
            if m.placement is None:
                raise MemberInInbox(f"fragment {m.id!r} is still in the inbox")
        container_id = f"c{self._next_container}"
        self._next_container += 1
        for m in members:
            if m.container_id:
                self._drop_member(m.container_id, m.id)
            m.container_id = container_id
        self.collage.containers[container_id] = Container(
            id=container_id,
            label=label,
            color=tuple(color),
            member_ids={m.id for m in members},
            bounds=self._fit_bounds(members),
        )
        self._bump()
        return container_id

    def delete_fragment(self, fragment_id: str) -> None:
        fragment = self._fragment(fragment_id)
        if fragment.container_id:
            self._drop_member(fragment.container_id, fragment_id)
        if fragment_id in self.collage.inbox:
            self.collage.inbox.remove(fragment_id)
        textpipe.on_fragment_removed(self.collage.corpus, fragment_id)
        del self.collage.fragments[fragment_id]
        self._bump(text_changed=True)

    def set_viewport(self, viewport: Viewport) -> None:
        self.collage.viewport = viewport
        self._bump()

    # ------------------------------------------------------------------
    # reads
    # ------------------------------------------------------------------

    def source_link(self, fragment_id: str) -> tuple[str, str | None]:
        fragment = self._fragment(fragment_id)
        if fragment.kind is Kind.NOTE:
            raise NoSource("notes have no source link")
        return fragment.source_url, fragment.source_locator

    def snapshot(self) -> Collage:
        return copy.deepcopy(self.collage)

    # ------------------------------------------------------------------
    # helpers
    # ------------------------------------------------------------------

    def _fragment(self, fragment_id: str) -> Fragment:
        try:
            return self.collage.fragments[fragment_id]
        except KeyError:
            raise UnknownId(f"no fragment {fragment_id!r}") from None

    def _fit_bounds(self, members) -> Placement:
        x0 = min(m.placement.x for m in members) - CONTAINER_PADDING
        y0 = min(m.placement.y for m in members) - CONTAINER_PADDING
        x1 = max(m.placement.x + m.placement.width for m in members) + CONTAINER_PADDING
        y1 = max(m.placement.y + m.placement.height for m in members) + CONTAINER_PADDING
        return Placement(x=x0, y=y0, width=x1 - x0, height=y1 - y0)

    def _refit_container(self, container_id: str) -> None:
        container = self.collage.containers[container_id]
        members = [self.collage.fragments[i] for i in container.member_ids]
        container.bounds = self._fit_bounds(members)

    def _drop_member(self, container_id: str, fragment_id: str) -> None:
        container = self.collage.containers.get(container_id)
        if container is None:
            return
        container.member_ids.discard(fragment_id)
        if container.member_ids:
            self._refit_container(container_id)
        else:
            del self.collage.containers[container_id]

    # ------------------------------------------------------------------
    # persistence
    # ------------------------------------------------------------------

    def save(self, path) -> None:
        try:
            Path(path).write_text(
                json.dumps(to_dict(self.collage), indent=2, sort_keys=True) + "\n",
                encoding="utf-8",
            )
        except OSError as exc:
            raise IoFailure(str(exc)) from exc

    @classmethod
    def load(cls, path, clock=None) -> "CollageStore":
        try:
            raw = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise IoFailure(str(exc)) from exc
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValidationFailure(f"not a JSON collage file: {exc}") from exc
        return cls(collage=from_dict(data), clock=clock)


# ----------------------------------------------------------------------
# file format (schema_version 1)
# ----------------------------------------------------------------------


def _placement_dict(p: Placement | None):
    if p is None:
        return None
    return {"x": p.x, "y": p.y, "width": p.width, "height": p.height}


def fragment_to_dict(f: Fragment) -> dict:
    return {
        "id": f.id,
        "kind": f.kind.value,
        "text": f.text,
        "source_url": f.source_url,
        "source_locator": f.source_locator,
        "captured_at": f.captured_at.isoformat(),
        "thumbnail_ref": f.thumbnail_ref,
        "favicon_ref": f.favicon_ref,
        "placement": _placement_dict(f.placement),
        "highlight": f.highlight,
        "container_id": f.container_id,
    }


def to_dict(collage: Collage) -> dict:
    """Wire/file form of the data model (excludes derived statistics)."""
    return {
        "schema_version": SCHEMA_VERSION,
        "fragments": {f.id: fragment_to_dict(f) for f in collage.fragments.values()},
        "containers": {
            c.id: {
                "id": c.id,
                "label": c.label,
                "color": list(c.color),
                "member_ids": sorted(c.member_ids),
                "bounds": _placement_dict(c.bounds),
            }
            for c in collage.containers.values()
        },
        "inbox": list(collage.inbox),
        "viewport": {
            "center": [collage.viewport.center_x, collage.viewport.center_y],
            "scale": collage.viewport.scale,
            "screen_size": [collage.viewport.width_px, collage.viewport.height_px],
        },
    }


def _require_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ValidationFailure(f"unknown keys {sorted(unknown)} in {where}")
    missing = required - set(obj)
    if missing:
        raise ValidationFailure(f"missing keys {sorted(missing)} in {where}")


def _parse_timestamp(value, where: str) -> datetime:
    if not isinstance(value, str):
        raise ValidationFailure(f"captured_at must be a string in {where}")
    try:
        ts = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError as exc:
        raise ValidationFailure(f"bad timestamp in {where}: {exc}") from exc
    if ts.tzinfo is None:
        raise ValidationFailure(f"timestamp in {where} lacks a UTC offset")
    return ts.astimezone(timezone.utc)


def _parse_placement(obj, where: str) -> Placement | None:
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise ValidationFailure(f"placement must be an object in {where}")
    _require_keys(obj, {"x", "y", "width", "height"}, {"x", "y", "width", "height"}, where)
    for k in ("x", "y", "width", "height"):
        if not isinstance(obj[k], (int, float)) or isinstance(obj[k], bool):
            raise ValidationFailure(f"placement.{k} must be a number in {where}")
    return Placement(x=float(obj["x"]), y=float(obj["y"]),
                     width=float(obj["width"]), height=float(obj["height"]))


_FRAGMENT_KEYS = {
    "id", "kind", "text", "source_url", "source_locator", "captured_at",
    "thumbnail_ref", "favicon_ref", "placement", "highlight", "container_id",
}


def from_dict(data) -> Collage:
    """Parse and fully validate the file form; statistics are recomputed."""
    if not isinstance(data, dict):
        raise ValidationFailure("collage file must contain a JSON object")
    _require_keys(
        data,
        {"schema_version", "fragments", "containers", "inbox", "viewport"},
        {"schema_version", "fragments", "containers", "inbox", "viewport"},
        "collage",
    )
    if data["schema_version"] != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"schema_version {data['schema_version']!r}, expected {SCHEMA_VERSION}"
        )

    fragments: dict[str, Fragment] = {}
    for fid, obj in data["fragments"].items():
        where = f"fragment {fid!r}"
        if not isinstance(obj, dict):
            raise ValidationFailure(f"{where} must be an object")
        _require_keys(obj, _FRAGMENT_KEYS, _FRAGMENT_KEYS, where)
        if obj["id"] != fid:
            raise ValidationFailure(f"{where} id mismatch")
        try:
            kind = Kind(obj["kind"])
        except ValueError:
            raise ValidationFailure(f"{where} has unknown kind {obj['kind']!r}") from None
        try:
            placement = _parse_placement(obj["placement"], where)
        except NonPositiveExtent as exc:
            raise ValidationFailure(f"{where}: {exc}") from exc
        fragment = Fragment(
            id=fid,
            kind=kind,
            text=obj["text"] if obj["text"] is not None else "",
            source_url=obj["source_url"],
            source_locator=obj["source_locator"],
            captured_at=_parse_timestamp(obj["captured_at"], where),
            thumbnail_ref=obj["thumbnail_ref"],
            favicon_ref=obj["favicon_ref"],
            placement=placement,
            highlight=bool(obj["highlight"]),
            container_id=obj["container_id"],
        )
        if kind is Kind.NOTE and fragment.source_url is not None:
            raise ValidationFailure(f"{where}: notes carry no source URL")
        if kind is not Kind.NOTE and fragment.source_url is None:
            raise ValidationFailure(f"{where}: captured fragments need a source URL")
        if kind in TEXT_KINDS and not fragment.text.strip():
            raise ValidationFailure(f"{where}: empty text for kind {kind.value}")
        fragments[fid] = fragment

    inbox = data["inbox"]
    if not isinstance(inbox, list) or len(set(inbox)) != len(inbox):
        raise ValidationFailure("inbox must be a list of unique fragment ids")
    for fid in inbox:
        if fid not in fragments:
            raise ValidationFailure(f"inbox id {fid!r} does not resolve")
        if fragments[fid].placement is not None:
            raise ValidationFailure(f"inbox fragment {fid!r} also has a placement")
    inbox_times = [fragments[i].captured_at for i in inbox]
    if inbox_times != sorted(inbox_times):
        raise ValidationFailure("inbox is not in capture order")
    in_inbox = set(inbox)
    for fid, fragment in fragments.items():
        if fragment.placement is None and fid not in in_inbox:
            raise ValidationFailure(f"fragment {fid!r} is neither placed nor in the inbox")

    containers: dict[str, Container] = {}
    for cid, obj in data["containers"].items():
        where = f"container {cid!r}"
        if not isinstance(obj, dict):
            raise ValidationFailure(f"{where} must be an object")
        _require_keys(obj, {"id", "label", "color", "member_ids", "bounds"},
                      {"id", "label", "color", "member_ids", "bounds"}, where)
        if obj["id"] != cid:
            raise ValidationFailure(f"{where} id mismatch")
        color = obj["color"]
        if not (isinstance(color, list) and len(color) == 3
                and all(isinstance(v, int) and 0 <= v <= 255 for v in color)):
            raise ValidationFailure(f"{where} color must be an RGB triple")
        members = obj["member_ids"]
        if not members:
            raise ValidationFailure(f"{where} has no members")
        bounds = _parse_placement(obj["bounds"], where)
        if bounds is None:
            raise ValidationFailure(f"{where} needs bounds")
        for fid in members:
            fragment = fragments.get(fid)
            if fragment is None:
                raise ValidationFailure(f"{where} member {fid!r} does not resolve")
            if fragment.placement is None:
                raise ValidationFailure(f"{where} member {fid!r} is in the inbox")
            if fragment.container_id != cid:
                raise ValidationFailure(f"{where} member {fid!r} back-reference mismatch")
            p = fragment.placement
            if not (bounds.x - 1e-9 <= p.x and bounds.y - 1e-9 <= p.y
                    and p.x + p.width <= bounds.x + bounds.width + 1e-9
                    and p.y + p.height <= bounds.y + bounds.height + 1e-9):
                raise ValidationFailure(f"{where} member {fid!r} outside bounds")
        containers[cid] = Container(
            id=cid, label=obj["label"], color=tuple(color),
            member_ids=set(members), bounds=bounds,
        )
    for fid, fragment in fragments.items():
        if fragment.container_id is not None:
            container = containers.get(fragment.container_id)
            if container is None or fid not in container.member_ids:
                raise ValidationFailure(f"fragment {fid!r} references a bad container")

    vp = data["viewport"]
    if not isinstance(vp, dict):
        raise ValidationFailure("viewport must be an object")
    _require_keys(vp, {"center", "scale", "screen_size"}, {"center", "scale", "screen_size"},
                  "viewport")
    try:
        viewport = Viewport(
            center_x=float(vp["center"][0]),
            center_y=float(vp["center"][1]),
            scale=float(vp["scale"]),
            width_px=int(vp["screen_size"][0]),
            height_px=int(vp["screen_size"][1]),
        )
    except (ValueError, TypeError, IndexError, KeyError) as exc:
        raise ValidationFailure(f"bad viewport: {exc}") from exc

    corpus = textpipe.recompute_stats({fid: f.text for fid, f in fragments.items()})
    return Collage(
        fragments=fragments,
        containers=containers,
        inbox=list(inbox),
        corpus=corpus,
        viewport=viewport,
    )
