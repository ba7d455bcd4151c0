"""Selection-driven similarity: cluster darkening by cosine similarity,
shared keywords, and web search query construction."""

from __future__ import annotations

import math
import urllib.parse
from dataclasses import dataclass

from . import textpipe
from .errors import NoLabels, UnknownSelection
from .textpipe import TermVector

OPACITY_MIN_VISIBLE_SIM = 0.05
OPACITY_LOW = 0.15
OPACITY_HIGH = 0.85

SEARCH_BASE = "https://www.google.com/search?q="


@dataclass(frozen=True)
class ClusterSimilarity:
    similarity: float
    opacity: float
    shared: tuple[str, ...]


@dataclass(frozen=True)
class SimilarityOverlay:
    selected: str
    per_cluster: dict[str, ClusterSimilarity]
    per_inbox: dict[str, float]


def cluster_vectors(clusters, stats) -> dict[str, TermVector]:
    """Cluster-as-document tf-idf vectors: idf over the current clusters."""
    n = len(clusters)
    tf_by_key = {c.key: textpipe.cluster_tf(sorted(c.member_ids), stats) for c in clusters}
    cdf: dict[str, int] = {}
    for counts in tf_by_key.values():
        for term in counts:
            cdf[term] = cdf.get(term, 0) + 1
    vectors = {}
    for key, counts in tf_by_key.items():
        weights = {
            term: c * math.log(n / cdf[term])
            for term, c in counts.items()
            if cdf[term] != n
        }
        vectors[key] = TermVector(weights=weights, owner=key)
    return vectors


def _shared_terms(u: TermVector, v: TermVector, limit: int = 2) -> tuple[str, ...]:
    common = set(u.weights) & set(v.weights)
    ranked = sorted(common, key=lambda t: (-(u.weights[t] * v.weights[t]), t))
    return tuple(ranked[:limit])


def opacity_map(similarity: float, max_similarity: float) -> float:
    """0 stays invisible; the visible range rescales linearly onto
    [0.15, 0.85] between the visibility floor and the overlay maximum."""
    if similarity <= 0.0:
        return 0.0
    if max_similarity <= OPACITY_MIN_VISIBLE_SIM:
        return OPACITY_LOW
    t = (similarity - OPACITY_MIN_VISIBLE_SIM) / (max_similarity - OPACITY_MIN_VISIBLE_SIM)
    t = min(1.0, max(0.0, t))
    return OPACITY_LOW + (OPACITY_HIGH - OPACITY_LOW) * t


def select(collage, clusters, selected: str) -> SimilarityOverlay:
    """Similarity of every other cluster and every inbox fragment to the
    selected fragment, note, inbox item, or cluster. Side-effect free."""
    clusters = list(clusters)
    vectors = cluster_vectors(clusters, collage.corpus)

    selected_cluster = None
    if selected in collage.fragments:
        selected_vec = textpipe.tfidf(
            collage.corpus.tf.get(selected, {}), collage.corpus, owner=selected
        )
    elif selected in vectors:
        selected_cluster = selected
        selected_vec = vectors[selected]
    else:
        raise UnknownSelection(f"{selected!r} is neither a fragment nor a current cluster")

    per_cluster_sim = {
        key: textpipe.cosine(selected_vec, vec)
        for key, vec in vectors.items()
        if key != selected_cluster
    }
    max_sim = max(per_cluster_sim.values(), default=0.0)
    per_cluster = {
        key: ClusterSimilarity(
            similarity=sim,
            opacity=opacity_map(sim, max_sim),
            shared=_shared_terms(selected_vec, vectors[key]),
        )
        for key, sim in per_cluster_sim.items()
    }

    per_inbox = {}
    for fid in collage.inbox:
        if fid == selected:
            continue
        vec = textpipe.tfidf(collage.corpus.tf.get(fid, {}), collage.corpus, owner=fid)
        per_inbox[fid] = textpipe.cosine(selected_vec, vec)

    return SimilarityOverlay(selected=selected, per_cluster=per_cluster, per_inbox=per_inbox)


def search_url(labels) -> str:
    """Web search query from up to five cluster keywords, in label order."""
    displays = [l.display if hasattr(l, "display") else str(l) for l in labels]
    if not displays:
        raise NoLabels("cluster has no keywords to search for")
    query = " ".join(displays[:5])
    return SEARCH_BASE + urllib.parse.quote(query, safe="")
