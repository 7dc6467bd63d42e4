"""Shared test hooks.

The acceptance tests report one line per criterion. Lines are printed as
the tests run and repeated in a terminal summary section so they stay
visible even when pytest captures stdout.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator

import pytest

_LINES: list[str] = []


def _record(line: str) -> None:
    print(line)
    _LINES.append(line)


@pytest.fixture
def criterion():
    """Context manager that prints '<label>: PASS' or '<label>: FAIL'."""

    @contextmanager
    def _criterion(label: str) -> Iterator[None]:
        try:
            yield
        except BaseException:
            _record(f"{label}: FAIL")
            raise
        _record(f"{label}: PASS")

    return _criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
