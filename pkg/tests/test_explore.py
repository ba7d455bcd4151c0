import math
import urllib.parse

import pytest

from infocollage.errors import NoLabels, UnknownSelection
from infocollage.explore import (
    OPACITY_HIGH,
    OPACITY_LOW,
    SimilarityOverlay,
    cluster_vectors,
    opacity_map,
    search_url,
    select,
)
from infocollage.spatial import Viewport
from infocollage.store import CollageStore, Kind, Placement, to_dict
from infocollage.textpipe import Label
from infocollage.zoomview import compute_view, with_overlay


@pytest.fixture
def store(clock):
    return CollageStore(clock=clock)


def place_text(store, text, x, y, w=40, h=30):
    fid = store.ingest_fragment(Kind.TEXT_SNIPPET, text, source_url=f"https://x/{x}-{y}")
    store.place_fragment(fid, Placement(x, y, w, h))
    return fid


def clusters_of(store, scale=1.0):
    return compute_view(store.collage, Viewport(0, 0, scale, 800, 600)).clusters


# three well-separated clusters sharing one term each pair
def three_cluster_store(store):
    a = place_text(store, "nickel cobalt shared", 0, 0)
    b = place_text(store, "cobalt copper shared", 500, 0)
    c = place_text(store, "zinc iron unrelated", 0, 500)
    return a, b, c


def test_select_cluster_excludes_itself(store):
    three_cluster_store(store)
    clusters = clusters_of(store)
    target = clusters[0].key
    overlay = select(store.collage, clusters, target)
    assert target not in overlay.per_cluster
    assert len(overlay.per_cluster) == 2


def test_select_unknown(store):
    three_cluster_store(store)
    with pytest.raises(UnknownSelection):
        select(store.collage, clusters_of(store), "nope")


def test_select_is_side_effect_free(store):
    three_cluster_store(store)
    before = to_dict(store.collage)
    revision = store.collage.revision
    select(store.collage, clusters_of(store), clusters_of(store)[0].key)
    assert to_dict(store.collage) == before
    assert store.collage.revision == revision


def test_image_selection_all_zero(store):
    three_cluster_store(store)
    img = store.ingest_fragment(Kind.IMAGE, "", source_url="https://x/img.png")
    store.place_fragment(img, Placement(900, 900, 10, 10))
    overlay = select(store.collage, clusters_of(store), img)
    assert all(cs.similarity == 0.0 for cs in overlay.per_cluster.values())
    assert all(cs.shared == () for cs in overlay.per_cluster.values())
    assert all(cs.opacity == 0.0 for cs in overlay.per_cluster.values())


def test_two_clusters_sharing_one_term(store):
    a, b, c = three_cluster_store(store)
    clusters = clusters_of(store)
    key_by_member = {next(iter(cl.member_ids)): cl.key for cl in clusters}
    overlay = select(store.collage, clusters, key_by_member[a])
    entry = overlay.per_cluster[key_by_member[b]]
    # hand evaluation over cluster-as-document vectors (N=3):
    #   A = {nickel: ln3, cobalt: ln1.5, shared: ln1.5}
    #   B = {copper: ln3, cobalt: ln1.5, shared: ln1.5}
    ln3, ln15 = math.log(3), math.log(1.5)
    expected = (2 * ln15 * ln15) / (ln3 * ln3 + 2 * ln15 * ln15)
    assert entry.similarity == pytest.approx(expected, abs=1e-12)
    assert entry.similarity > 0
    assert set(entry.shared) == {"cobalt", "share"}  # the two common stems
    unrelated = overlay.per_cluster[key_by_member[c]]
    assert unrelated.similarity == 0.0
    assert unrelated.shared == ()


def test_shared_keywords_capped_at_two(store):
    place_text(store, "one two three four five", 0, 0)
    place_text(store, "one two three four five six", 600, 0)
    place_text(store, "unshared different things", 0, 600)
    clusters = clusters_of(store)
    overlay = select(store.collage, clusters, clusters[0].key)
    for cs in overlay.per_cluster.values():
        assert len(cs.shared) <= 2


def test_shared_ranked_by_weight_product(store):
    # "alpha" appears often on both sides, "beta" once each: alpha must rank first
    place_text(store, "alpha alpha alpha beta solo", 0, 0)
    place_text(store, "alpha alpha alpha beta other", 600, 0)
    place_text(store, "background noise words", 0, 600)
    clusters = clusters_of(store)
    overlay = select(store.collage, clusters, clusters[0].key)
    shared = overlay.per_cluster[clusters[1].key].shared
    assert shared[0] == "alpha"


def test_inbox_similarities(store):
    a, b, c = three_cluster_store(store)
    similar = store.ingest_fragment(Kind.TEXT_SNIPPET, "nickel cobalt",
                                    source_url="https://x/in1")
    unrelated = store.ingest_fragment(Kind.TEXT_SNIPPET, "granite marble",
                                      source_url="https://x/in2")
    clusters = clusters_of(store)
    key_a = next(cl.key for cl in clusters if a in cl.member_ids)
    overlay = select(store.collage, clusters, key_a)
    assert overlay.per_inbox[similar] > overlay.per_inbox[unrelated] == 0.0


def test_selected_inbox_item_excluded_from_inbox_map(store):
    three_cluster_store(store)
    fid = store.ingest_fragment(Kind.TEXT_SNIPPET, "nickel note", source_url="https://x/in")
    overlay = select(store.collage, clusters_of(store), fid)
    assert fid not in overlay.per_inbox


def test_opacity_matches_similarity_order(store):
    a, b, c = three_cluster_store(store)
    clusters = clusters_of(store)
    key_a = next(cl.key for cl in clusters if a in cl.member_ids)
    overlay = select(store.collage, clusters, key_a)
    entries = sorted(overlay.per_cluster.values(), key=lambda e: e.similarity)
    opacities = [e.opacity for e in entries]
    assert opacities == sorted(opacities)


# ----------------------------------------------------------------------
# opacity map
# ----------------------------------------------------------------------


def test_opacity_map_endpoints():
    assert opacity_map(0.0, 0.9) == 0.0
    assert opacity_map(0.9, 0.9) == OPACITY_HIGH
    mid = (0.05 + 0.9) / 2
    assert opacity_map(mid, 0.9) == pytest.approx((OPACITY_LOW + OPACITY_HIGH) / 2)


def test_opacity_map_monotone():
    sims = [i / 100 for i in range(101)]
    values = [opacity_map(s, 1.0) for s in sims]
    assert values == sorted(values)
    # strictly monotone over the visible range
    visible = [opacity_map(s, 1.0) for s in (0.05, 0.3, 0.6, 1.0)]
    assert all(a < b for a, b in zip(visible, visible[1:]))


def test_opacity_map_tiny_max():
    assert opacity_map(0.01, 0.02) == OPACITY_LOW


# ----------------------------------------------------------------------
# overlay into view model
# ----------------------------------------------------------------------


def test_overlay_folds_into_view(store):
    a, *_ = three_cluster_store(store)
    viewport = Viewport(0, 0, 1.0, 800, 600)
    vm = compute_view(store.collage, viewport)
    key_a = next(cl.key for cl in vm.clusters if a in cl.member_ids)
    overlay = select(store.collage, vm.clusters, key_a)
    merged = with_overlay(vm, overlay)
    for cluster in merged.clusters:
        if cluster.key == key_a:
            assert cluster.similarity_opacity is None
        else:
            assert cluster.similarity_opacity == overlay.per_cluster[cluster.key].opacity
            assert cluster.shared_keywords == overlay.per_cluster[cluster.key].shared


# ----------------------------------------------------------------------
# search url
# ----------------------------------------------------------------------


def _labels(*displays):
    return [Label(stem=d.lower(), display=d, weight=1.0) for d in displays]


def test_search_url_two_labels():
    assert search_url(_labels("solar", "wind")) == "https://www.google.com/search?q=solar%20wind"


def test_search_url_exactly_five_terms():
    url = search_url(_labels("a1", "b2", "c3", "d4", "e5", "f6", "g7"))
    query = url.split("q=", 1)[1]
    assert query == "a1%20b2%20c3%20d4%20e5"
    assert len(urllib.parse.unquote(query).split(" ")) == 5


def test_search_url_percent_encodes_display_forms():
    url = search_url(_labels("data set", "naïve"))
    assert url == "https://www.google.com/search?q=data%20set%20na%C3%AFve"


def test_search_url_no_labels():
    with pytest.raises(NoLabels):
        search_url([])


def test_search_url_accepts_plain_strings():
    assert search_url(["solar", "wind"]).endswith("q=solar%20wind")
