"""Record API fixtures for the frontend contract tests.

Builds a deterministic collage through the real service and dumps selected
responses into frontend/test/fixtures/. Run from the repo root:

    python3 frontend/scripts/record_fixtures.py
"""

import json
from datetime import datetime, timedelta, timezone
from pathlib import Path

from fastapi.testclient import TestClient

from infocollage.service import create_app
from infocollage.store import CollageStore

FIXTURES = Path(__file__).resolve().parent.parent / "test" / "fixtures"

VIEW_QUERY = {"cx": 150, "cy": 60, "scale": 1.0, "w": 800, "h": 600, "eps": 40}


class Ticker:
    def __init__(self):
        self.now = datetime(2026, 1, 1, tzinfo=timezone.utc)

    def __call__(self):
        self.now += timedelta(seconds=1)
        return self.now


def build(client):
    def ingest(text, url):
        r = client.post("/fragments", json={"kind": "text_snippet", "text": text,
                                            "source_url": url})
        assert r.status_code == 200, r.text
        return r.json()["id"]

    def place(fid, x, y, w=120, h=80):
        r = client.post(f"/fragments/{fid}/placement",
                        json={"x": x, "y": y, "width": w, "height": h})
        assert r.status_code == 200, r.text

    # two on-screen clusters with distinct vocabularies plus a shared term
    a1 = ingest("solar wind plasma streams from the corona", "https://phys.example/solar")
    a2 = ingest("solar flares disturb the plasma sheath", "https://phys.example/flares")
    b1 = ingest("drum and bass rhythm section with plasma lights", "https://music.example/rhythm")
    place(a1, 0, 0)
    place(a2, 140, 10)
    place(b1, 420, 40)
    # a far-away cluster that sits outside the recorded viewport -> citylight
    c1 = ingest("glacier ice cores and moraines", "https://geo.example/ice")
    place(c1, 4000, 900)
    # one note directly on the canvas
    client.post("/notes", json={"text": "compare plasma usage across fields",
                                "placement": {"x": 260, "y": 200, "width": 140, "height": 60}})
    # two inbox fragments, one similar to the solar cluster
    ingest("coronal mass ejections and solar wind", "https://phys.example/cme")
    ingest("sourdough starter maintenance notes", "https://food.example/bread")
    return a1, a2, b1, c1


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    store = CollageStore(clock=Ticker())
    client = TestClient(create_app(store))
    a1, *_ = build(client)

    collage = client.get("/collage").json()
    view = client.get("/view", params=VIEW_QUERY).json()
    inbox = client.get("/inbox").json()
    solar_key = next(c["key"] for c in view["clusters"] if a1 in c["member_ids"])
    overlay = client.post(
        "/select",
        json={"selected": solar_key, "center": [VIEW_QUERY["cx"], VIEW_QUERY["cy"]],
              "scale": VIEW_QUERY["scale"],
              "screen_size": [VIEW_QUERY["w"], VIEW_QUERY["h"]], "eps": VIEW_QUERY["eps"]},
    ).json()
    kwic = client.get("/kwic", params={"fragment": a1, "stem": "plasma", "window": 18}).json()
    search = client.get("/search-url", params={"cluster": solar_key, **{
        k: v for k, v in VIEW_QUERY.items()}}).json()

    for name, payload in [
        ("collage", collage),
        ("view", view),
        ("inbox", inbox),
        ("overlay", overlay),
        ("kwic", kwic),
        ("search", search),
        ("meta", {"view_query": VIEW_QUERY, "selected_cluster": solar_key,
                  "kwic_fragment": a1, "kwic_stem": "plasma"}),
    ]:
        path = FIXTURES / f"{name}.json"
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        print(f"wrote {path.relative_to(Path.cwd())}")


if __name__ == "__main__":
    main()
