"""Activity logging and usage-strategy clustering.

Per-user counts of fragments created, collage accesses, and source
revisitations are standardized to zero mean and unit variance per axis, then
density-clustered (minimum cluster size 1) with a maximum distance of 2.0,
which reduces to connected components of the threshold graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .errors import DegenerateAxis, IoFailure, NonMonotoneTimestamp, ValidationFailure

EVENT_TYPES = ("fragment_created", "collage_access", "source_revisit")
STRATEGY_EPS = 2.0


@dataclass(frozen=True)
class ActivityEvent:
    timestamp: datetime
    user_key: str
    event_type: str


@dataclass
class ActivityLog:
    """Append-only event log for one user; timestamps must not go backwards."""

    user_key: str
    events: list[ActivityEvent] = field(default_factory=list)

    def record(self, event_type: str, timestamp: datetime) -> None:
        if event_type not in EVENT_TYPES:
            raise ValidationFailure(f"unknown event type {event_type!r}")
        if timestamp.tzinfo is None:
            timestamp = timestamp.replace(tzinfo=timezone.utc)
        if self.events and timestamp < self.events[-1].timestamp:
            raise NonMonotoneTimestamp(
                f"{timestamp.isoformat()} is before the last recorded event"
            )
        self.events.append(ActivityEvent(timestamp, self.user_key, event_type))

    def counts(self) -> tuple[int, int, int]:
        """(fragments_created, collage_accesses, source_revisits)."""
        by_type = {t: 0 for t in EVENT_TYPES}
        for e in self.events:
            by_type[e.event_type] += 1
        return tuple(by_type[t] for t in EVENT_TYPES)


# ----------------------------------------------------------------------
# log file format: one event per line, `timestamp<TAB>user_key<TAB>event_type`
# ----------------------------------------------------------------------


def format_event(event: ActivityEvent) -> str:
    return f"{event.timestamp.isoformat()}\t{event.user_key}\t{event.event_type}"


def append_event(path, event: ActivityEvent) -> None:
    try:
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(format_event(event) + "\n")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def read_events(path) -> list[ActivityEvent]:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    events = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValidationFailure(f"line {lineno}: expected 3 tab-separated fields")
        ts_raw, user_key, event_type = parts
        if event_type not in EVENT_TYPES:
            raise ValidationFailure(f"line {lineno}: unknown event type {event_type!r}")
        try:
            ts = datetime.fromisoformat(ts_raw.replace("Z", "+00:00"))
        except ValueError as exc:
            raise ValidationFailure(f"line {lineno}: bad timestamp: {exc}") from exc
        events.append(ActivityEvent(ts, user_key, event_type))
    return events


def counts_by_user(events) -> dict[str, tuple[int, int, int]]:
    """Per-user activity count vectors, users in first-appearance order."""
    logs: dict[str, ActivityLog] = {}
    for e in events:
        logs.setdefault(e.user_key, ActivityLog(e.user_key)).record(e.event_type, e.timestamp)
    return {user: log.counts() for user, log in logs.items()}


# ----------------------------------------------------------------------
# strategy clustering
# ----------------------------------------------------------------------


def standardize(samples: np.ndarray) -> np.ndarray:
    """Center each axis and scale to unit (population) variance; constant
    axes are dropped. All axes constant means all samples coincide."""
    samples = np.asarray(samples, dtype=np.float64)
    std = samples.std(axis=0)
    keep = std > 0
    if not keep.any():
        raise DegenerateAxis("all axes are constant")
    kept = samples[:, keep]
    return (kept - kept.mean(axis=0)) / kept.std(axis=0)


def strategy_clusters(samples, eps: float = STRATEGY_EPS) -> list[list[int]]:
    """Partition of sample indices; clusters ordered by smallest index and
    members ascending. Two identical samples always share a cluster."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 2 or samples.shape[0] < 2:
        raise ValidationFailure("need at least two sample vectors")
    if (samples == samples[0]).all():
        return [list(range(samples.shape[0]))]
    z = standardize(samples)
    diff = z[:, None, :] - z[None, :, :]
    adjacent = (diff * diff).sum(axis=2) <= eps * eps

    n = z.shape[0]
    labels = [-1] * n
    next_label = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = next_label
        frontier = [start]
        while frontier:
            i = frontier.pop()
            for j in range(n):
                if labels[j] < 0 and adjacent[i, j]:
                    labels[j] = next_label
                    frontier.append(j)
        next_label += 1
    partition = [[] for _ in range(next_label)]
    for idx, label in enumerate(labels):
        partition[label].append(idx)
    return partition
