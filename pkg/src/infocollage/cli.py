"""Command line entry points: serve, ingest, snapshot, analyze, export."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import analytics, service, svgsnap, webingest, zoomview
from .errors import CollageError
from .spatial import Viewport
from .store import CollageStore, Kind, to_dict
from .zoomview import ViewParams


def _data_path(args) -> str:
    return os.environ.get("IC_DATA") or args.data


def _open_store(path) -> CollageStore:
    if Path(path).exists():
        return CollageStore.load(path)
    return CollageStore()


def cmd_serve(args) -> int:
    import uvicorn

    data = _data_path(args)
    store = _open_store(data)
    ui_dir = args.ui_dir
    if ui_dir is None:
        bundled = Path(__file__).resolve().parent.parent.parent.parent / "frontend" / "dist"
        ui_dir = bundled if bundled.is_dir() else None
    app = service.create_app(
        store,
        data_path=data,
        events_path=args.events or data + ".events",
        default_eps=args.eps,
        ui_dir=ui_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_ingest(args) -> int:
    data = _data_path(args)
    store = _open_store(data)
    if args.url:
        html = webingest.fetch_page(args.url)
        fragment_id = store.ingest_fragment(
            kind=Kind.DOCUMENT,
            text=webingest.extract_text(html),
            source_url=args.url,
            favicon_ref=webingest.find_favicon(html, args.url),
        )
    else:
        if not args.source_url:
            print("ingest --text needs --source-url (captured text keeps its provenance)",
                  file=sys.stderr)
            return 2
        fragment_id = store.ingest_fragment(
            kind=Kind.TEXT_SNIPPET,
            text=args.text,
            source_url=args.source_url,
            source_locator=args.source_locator,
        )
    store.save(data)
    print(fragment_id)
    return 0


def cmd_snapshot(args) -> int:
    store = CollageStore.load(_data_path(args))
    stored = store.collage.viewport
    viewport = Viewport(
        center_x=stored.center_x if args.cx is None else args.cx,
        center_y=stored.center_y if args.cy is None else args.cy,
        scale=args.scale,
        width_px=stored.width_px if args.width is None else args.width,
        height_px=stored.height_px if args.height is None else args.height,
    )
    view = zoomview.compute_view(store.collage, viewport, ViewParams(eps_screen_px=args.eps))
    svg = svgsnap.render_svg(view, viewport.width_px, viewport.height_px)
    Path(args.out).write_text(svg, encoding="utf-8")
    print(f"wrote {args.out}: {len(view.clusters)} clusters, {len(view.citylights)} citylights")
    return 0


def cmd_analyze(args) -> int:
    events = analytics.read_events(args.log)
    counts = analytics.counts_by_user(events)
    if len(counts) < 2:
        print("need activity from at least two users", file=sys.stderr)
        return 2
    users = list(counts)
    partition = analytics.strategy_clusters([counts[u] for u in users], eps=args.eps)
    print(f"{len(partition)} clusters")
    for rank, indices in enumerate(partition, 1):
        members = sorted(users[i] for i in indices)
        print(f"cluster {rank} (n={len(indices)}): {', '.join(members)}")
    return 0


def cmd_export(args) -> int:
    store = CollageStore.load(_data_path(args))
    json.dump(to_dict(store.collage), sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infocollage",
        description="Information-collage workspace engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--port", type=int, default=service.DEFAULT_PORT)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data", default=service.DEFAULT_DATA_FILE)
    p.add_argument("--eps", type=float, default=40.0, help="default clustering threshold, screen px")
    p.add_argument("--events", default=None, help="activity log path (default: <data>.events)")
    p.add_argument("--ui-dir", default=None, help="static frontend directory")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("ingest", help="add a fragment to a collage file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--url", help="fetch this page and store its text")
    group.add_argument("--text", help="store this text snippet")
    p.add_argument("--source-url", help="provenance for --text")
    p.add_argument("--source-locator", default=None)
    p.add_argument("--out", dest="data", default=service.DEFAULT_DATA_FILE)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("snapshot", help="render one viewport to SVG")
    p.add_argument("--data", default=service.DEFAULT_DATA_FILE)
    p.add_argument("--scale", type=float, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--eps", type=float, default=40.0)
    p.add_argument("--cx", type=float, default=None)
    p.add_argument("--cy", type=float, default=None)
    p.add_argument("--width", type=int, default=None)
    p.add_argument("--height", type=int, default=None)
    p.set_defaults(func=cmd_snapshot)

    p = sub.add_parser("analyze", help="cluster usage strategies from an activity log")
    p.add_argument("--log", required=True)
    p.add_argument("--eps", type=float, default=analytics.STRATEGY_EPS)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("export", help="dump a collage file to stdout")
    p.add_argument("--data", default=service.DEFAULT_DATA_FILE)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CollageError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
