import random
from datetime import datetime, timedelta, timezone

import numpy as np
import pytest

from infocollage.analytics import (
    EVENT_TYPES,
    ActivityEvent,
    ActivityLog,
    append_event,
    counts_by_user,
    format_event,
    read_events,
    standardize,
    strategy_clusters,
)
from infocollage.errors import NonMonotoneTimestamp, ValidationFailure

import oracles

T0 = datetime(2026, 3, 1, tzinfo=timezone.utc)

# one high-fragment outlier, five low-activity users, two high-access/high-revisit
FIELD_STUDY_SHAPE = [
    ("KO", (210, 4, 2)),
    ("LP", (58, 6, 3)),
    ("EM", (66, 5, 4)),
    ("PG", (49, 7, 2)),
    ("DA", (72, 4, 5)),
    ("EG", (61, 8, 3)),
    ("CE", (85, 44, 31)),
    ("LN", (74, 38, 27)),
]


# ----------------------------------------------------------------------
# event log
# ----------------------------------------------------------------------


def test_record_counts():
    log = ActivityLog("u1")
    for i, t in enumerate(["fragment_created", "fragment_created", "collage_access"]):
        log.record(t, T0 + timedelta(seconds=i))
    assert log.counts() == (2, 1, 0)


def test_record_rejects_backwards_time():
    log = ActivityLog("u1")
    log.record("collage_access", T0)
    log.record("collage_access", T0)  # equal timestamps are fine
    with pytest.raises(NonMonotoneTimestamp):
        log.record("collage_access", T0 - timedelta(seconds=1))


def test_record_rejects_unknown_type():
    with pytest.raises(ValidationFailure):
        ActivityLog("u1").record("clicked", T0)


def test_log_file_round_trip(tmp_path):
    path = tmp_path / "activity.log"
    events = [
        ActivityEvent(T0 + timedelta(seconds=i), f"u{i % 2}", EVENT_TYPES[i % 3])
        for i in range(7)
    ]
    for e in events:
        append_event(path, e)
    assert read_events(path) == events
    line = path.read_text().splitlines()[0]
    assert line == format_event(events[0])
    assert line.count("\t") == 2


def test_read_events_rejects_garbage(tmp_path):
    path = tmp_path / "bad.log"
    path.write_text("2026-03-01T00:00:00+00:00\tu1\n")
    with pytest.raises(ValidationFailure):
        read_events(path)
    path.write_text("2026-03-01T00:00:00+00:00\tu1\tdanced\n")
    with pytest.raises(ValidationFailure):
        read_events(path)


def test_counts_by_user_orders_by_first_appearance(tmp_path):
    events = [
        ActivityEvent(T0, "b", "collage_access"),
        ActivityEvent(T0 + timedelta(seconds=1), "a", "fragment_created"),
        ActivityEvent(T0 + timedelta(seconds=2), "b", "source_revisit"),
    ]
    counts = counts_by_user(events)
    assert list(counts) == ["b", "a"]
    assert counts["b"] == (0, 1, 1)
    assert counts["a"] == (1, 0, 0)


# ----------------------------------------------------------------------
# standardization
# ----------------------------------------------------------------------


def test_standardize_zero_mean_unit_variance():
    rng = random.Random(3)
    samples = [(rng.randint(0, 300), rng.randint(0, 60), rng.randint(0, 40)) for _ in range(12)]
    z = standardize(np.array(samples, dtype=float))
    assert np.abs(z.mean(axis=0)).max() < 1e-9
    assert np.abs(z.var(axis=0) - 1.0).max() < 1e-9
    expected = oracles.standardize(samples)
    assert np.allclose(z, np.array(expected), atol=1e-9)


def test_standardize_drops_constant_axes():
    z = standardize(np.array([(1, 5, 2), (1, 7, 4), (1, 6, 9)], dtype=float))
    assert z.shape == (3, 2)


# ----------------------------------------------------------------------
# strategy clustering
# ----------------------------------------------------------------------


def test_identical_samples_one_cluster():
    assert strategy_clusters([(3, 3, 3), (3, 3, 3)]) == [[0, 1]]


def test_two_opposed_samples_split():
    # standardized to (-1,-1,-1) and (1,1,1): pair distance 2*sqrt(3) > 2.0
    assert strategy_clusters([(0, 0, 0), (1, 1, 1)]) == [[0], [1]]


def test_partition_reorder_invariant():
    samples = [c for _, c in FIELD_STUDY_SHAPE]
    base = {frozenset(p) for p in strategy_clusters(samples)}
    rng = random.Random(8)
    order = list(range(len(samples)))
    rng.shuffle(order)
    shuffled = strategy_clusters([samples[i] for i in order])
    remapped = {frozenset(order[i] for i in part) for part in shuffled}
    assert remapped == base


def test_partition_affine_rescale_invariant():
    samples = [c for _, c in FIELD_STUDY_SHAPE]
    scaled = [(17.0 * a + 3.0, 0.25 * b - 40.0, 900.0 * c + 1.0) for a, b, c in samples]
    assert strategy_clusters(samples) == strategy_clusters(scaled)


def test_matches_component_oracle():
    rng = random.Random(17)
    for _ in range(50):
        n = rng.randint(2, 20)
        samples = [
            (rng.randint(0, 40), rng.randint(0, 40), rng.randint(0, 40)) for _ in range(n)
        ]
        if all(s == samples[0] for s in samples):
            continue
        eps = rng.choice([0.5, 1.0, 2.0, 3.0])
        got = {frozenset(p) for p in strategy_clusters(samples, eps=eps)}
        z = oracles.standardize(samples)
        assert got == oracles.point_eps_partition(z, eps)


def test_field_study_shape_three_clusters():
    users = [u for u, _ in FIELD_STUDY_SHAPE]
    partition = strategy_clusters([c for _, c in FIELD_STUDY_SHAPE])
    named = [sorted(users[i] for i in part) for part in partition]
    assert named == [["KO"], ["DA", "EG", "EM", "LP", "PG"], ["CE", "LN"]]
    assert sorted(len(p) for p in partition) == [1, 2, 5]


def test_too_few_samples():
    with pytest.raises(ValidationFailure):
        strategy_clusters([(1, 2, 3)])
