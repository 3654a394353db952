import time

import pytest

_LINES = []


class Criterion:
    """Times one acceptance criterion and records a single PASS/FAIL line."""

    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget
        self.elapsed = None

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self._t0
        over = self.elapsed > self.budget
        ok = exc_type is None and not over
        why = ""
        if exc_type is not None:
            why = f" ({exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        elif over:
            why = " (over time budget)"
        line = (f"[{'PASS' if ok else 'FAIL'}] criterion {self.number:2d}: {self.title}"
                f"  {self.elapsed:.2f}s / {self.budget:g}s{why}")
        _LINES.append((self.number, line))
        print(line)
        if exc_type is None and over:
            raise AssertionError(f"criterion {self.number} took {self.elapsed:.1f}s > {self.budget}s")
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_LINES):
        terminalreporter.write_line(line)
