"""Text analysis pipeline: tokenization, stop words, stemming, tf/idf
bookkeeping, cluster keyword extraction, cosine similarity, and
keyword-in-context lookup.

Term statistics live in a CorpusStats value that the store mutates through
on_fragment_added / on_fragment_removed; everything else here is a pure
function over those statistics.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources

from .errors import UndefinedIdf, UnknownId
from .stemmer import stem

__all__ = [
    "TermVector",
    "CorpusStats",
    "KwicHit",
    "Label",
    "tokenize",
    "remove_stopwords",
    "stem",
    "stems_of",
    "on_fragment_added",
    "on_fragment_removed",
    "recompute_stats",
    "tfidf",
    "cluster_tf",
    "cluster_labels",
    "cosine",
    "kwic",
    "stopwords",
]

# unicode letters/digits, underscore excluded
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def stopwords() -> frozenset[str]:
    """The fixed English stop list shipped with the package."""
    global _STOPWORDS
    if _STOPWORDS is None:
        text = resources.files("infocollage").joinpath("data/stopwords.txt").read_text("utf-8")
        _STOPWORDS = frozenset(text.split())
    return _STOPWORDS


_STOPWORDS = None


@dataclass(frozen=True)
class TermVector:
    """Sparse non-negative term weights for one fragment or cluster."""

    weights: dict[str, float]
    owner: str


@dataclass(frozen=True)
class KwicHit:
    fragment_id: str
    keyword: str
    context: str
    match_offset: int


@dataclass(frozen=True)
class Label:
    """One cluster keyword: the stem, its display surface form, its weight."""

    stem: str
    display: str
    weight: float


@dataclass
class CorpusStats:
    """Global document frequencies plus per-fragment raw term counts.

    Every fragment known to the collage has a tf row (possibly empty, e.g.
    images); n_docs counts only the rows that carry at least one term.
    `surfaces` keeps per-fragment counts of the unstemmed forms behind each
    stem so cluster labels can show a readable word.
    """

    n_docs: int = 0
    df: dict[str, int] = field(default_factory=dict)
    tf: dict[str, dict[str, int]] = field(default_factory=dict)
    surfaces: dict[str, dict[str, Counter]] = field(default_factory=dict)


def tokenize(text: str) -> list[str]:
    """Lowercase and split on non-alphanumerics; drop 1-char and pure-digit tokens."""
    return [t for t in _TOKEN_RE.findall(text.lower()) if len(t) >= 2 and not t.isdigit()]


def remove_stopwords(tokens: list[str]) -> list[str]:
    sw = stopwords()
    return [t for t in tokens if t not in sw]


def stems_of(text: str) -> list[str]:
    """Full pipeline for one text: tokenize, drop stop words, stem."""
    return [stem(t) for t in remove_stopwords(tokenize(text))]


def _analyze(text: str) -> tuple[dict[str, int], dict[str, Counter]]:
    counts: dict[str, int] = {}
    surfaces: dict[str, Counter] = {}
    for token in remove_stopwords(tokenize(text)):
        s = stem(token)
        counts[s] = counts.get(s, 0) + 1
        surfaces.setdefault(s, Counter())[token] += 1
    return counts, surfaces


def on_fragment_added(stats: CorpusStats, fragment_id: str, text: str) -> None:
    """Insert the fragment's tf row and update df / n_docs incrementally."""
    if fragment_id in stats.tf:
        raise UnknownId(f"fragment {fragment_id!r} already indexed")
    counts, surfaces = _analyze(text)
    stats.tf[fragment_id] = counts
    stats.surfaces[fragment_id] = surfaces
    if counts:
        stats.n_docs += 1
        for term in counts:
            stats.df[term] = stats.df.get(term, 0) + 1


def on_fragment_removed(stats: CorpusStats, fragment_id: str) -> None:
    """Inverse of on_fragment_added; equivalent to recomputing from scratch."""
    counts = stats.tf.pop(fragment_id, None)
    if counts is None:
        raise UnknownId(f"fragment {fragment_id!r} not indexed")
    stats.surfaces.pop(fragment_id, None)
    if counts:
        stats.n_docs -= 1
        for term in counts:
            remaining = stats.df[term] - 1
            if remaining:
                stats.df[term] = remaining
            else:
                del stats.df[term]


def recompute_stats(texts: dict[str, str]) -> CorpusStats:
    """Build fresh statistics from scratch for id → text."""
    stats = CorpusStats()
    for fragment_id, text in texts.items():
        on_fragment_added(stats, fragment_id, text)
    return stats


def tfidf(owner_tf: dict[str, int], stats: CorpusStats, owner: str = "") -> TermVector:
    """Weight each term tf * ln(N / df); ubiquitous terms (df = N) drop out."""
    weights: dict[str, float] = {}
    n = stats.n_docs
    for term, count in owner_tf.items():
        df = stats.df.get(term, 0)
        if df <= 0:
            raise UndefinedIdf(f"term {term!r} has tf > 0 but df = 0")
        if df == n:
            continue
        weights[term] = count * math.log(n / df)
    return TermVector(weights=weights, owner=owner)


def cluster_tf(member_ids, stats: CorpusStats) -> dict[str, int]:
    """Element-wise sum of the members' raw term counts."""
    total: dict[str, int] = {}
    for fragment_id in member_ids:
        row = stats.tf.get(fragment_id)
        if row is None:
            raise UnknownId(f"fragment {fragment_id!r} not indexed")
        for term, count in row.items():
            total[term] = total.get(term, 0) + count
    return total


def _cluster_surfaces(member_ids, stats: CorpusStats) -> dict[str, Counter]:
    merged: dict[str, Counter] = {}
    for fragment_id in member_ids:
        for s, counter in stats.surfaces.get(fragment_id, {}).items():
            merged.setdefault(s, Counter()).update(counter)
    return merged


def _display_form(s: str, surfaces: dict[str, Counter]) -> str:
    counter = surfaces.get(s)
    if not counter:
        return s
    return min(counter.items(), key=lambda kv: (-kv[1], kv[0]))[0]


def cluster_labels(
    cluster_members: dict[str, list[str]], stats: CorpusStats, top_k: int = 5
) -> dict[str, list[Label]]:
    """Top-k keywords per cluster, treating each current cluster as one document.

    Cluster-level idf uses N = number of clusters and df = number of clusters
    containing the term, so terms present in every cluster vanish. With a
    single cluster all idf are zero; we fall back to raw count ranking so the
    label set never comes up empty.
    """
    n_clusters = len(cluster_members)
    tf_by_cluster = {key: cluster_tf(ids, stats) for key, ids in cluster_members.items()}
    cdf: dict[str, int] = {}
    for counts in tf_by_cluster.values():
        for term in counts:
            cdf[term] = cdf.get(term, 0) + 1

    labels: dict[str, list[Label]] = {}
    for key, counts in tf_by_cluster.items():
        if n_clusters == 1:
            scored = [(c, term, float(c)) for term, c in counts.items()]
        else:
            scored = []
            for term, c in counts.items():
                if cdf[term] == n_clusters:
                    continue
                scored.append((c, term, c * math.log(n_clusters / cdf[term])))
        scored.sort(key=lambda t: (-t[2], -t[0], t[1]))
        surfaces = _cluster_surfaces(cluster_members[key], stats)
        labels[key] = [
            Label(stem=term, display=_display_form(term, surfaces), weight=w)
            for c, term, w in scored[:top_k]
        ]
    return labels


def cosine(u: TermVector, v: TermVector) -> float:
    """Cosine similarity in [0, 1]; zero vectors compare as 0."""
    if not u.weights or not v.weights:
        return 0.0
    # summation in sorted term order keeps the result exactly symmetric
    common = sorted(set(u.weights) & set(v.weights))
    dot = sum(u.weights[t] * v.weights[t] for t in common)
    if dot == 0.0:
        return 0.0
    nu = math.sqrt(sum(w * w for _, w in sorted(u.weights.items())))
    nv = math.sqrt(sum(w * w for _, w in sorted(v.weights.items())))
    return min(1.0, dot / (nu * nv))


def kwic(fragment_id: str, text: str, keyword: str, window_chars: int) -> list[KwicHit]:
    """All occurrences of tokens stemming to `keyword`, each with its
    surrounding ±window_chars of text (clamped to the fragment bounds)."""
    hits = []
    sw = stopwords()
    for m in _TOKEN_RE.finditer(text):
        token = m.group().lower()
        if len(token) < 2 or token.isdigit() or token in sw:
            continue
        if stem(token) != keyword:
            continue
        start = max(0, m.start() - window_chars)
        end = min(len(text), m.end() + window_chars)
        hits.append(
            KwicHit(
                fragment_id=fragment_id,
                keyword=keyword,
                context=text[start:end],
                match_offset=m.start(),
            )
        )
    return hits
