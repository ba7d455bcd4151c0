import sys
from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# criterion label -> outcome, filled in as the acceptance module runs
_ACCEPTANCE: dict[str, str] = {}


def record_criterion(name: str) -> None:
    """Mark a criterion as seen; the report hook flips it to pass/fail."""
    _ACCEPTANCE.setdefault(name, "FAIL")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    criterion = getattr(item.function, "_criterion", None)
    if criterion and report.when == "call":
        _ACCEPTANCE[criterion] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE.items():
        terminalreporter.write_line(f"[{outcome}] {name}")


def criterion(name: str):
    """Tag an acceptance test with its criterion label."""

    def mark(fn):
        fn._criterion = name
        _ACCEPTANCE.setdefault(name, "FAIL")
        return fn

    return mark


class TickClock:
    """Deterministic clock: every call advances one second."""

    def __init__(self, start: datetime | None = None):
        self.now = start or datetime(2026, 1, 1, tzinfo=timezone.utc)

    def __call__(self) -> datetime:
        self.now += timedelta(seconds=1)
        return self.now


@pytest.fixture
def clock():
    return TickClock()
