import time

import pytest

ACCEPTANCE_LINES = []


class Criterion:
    """Times one acceptance criterion and records a single pass/fail line for it."""

    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget
        self.notes = []

    def note(self, text):
        self.notes.append(text)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        over = elapsed >= self.budget
        ok = exc_type is None and not over
        extra = "; ".join(self.notes)
        line = (f"criterion {self.number} {'PASS' if ok else 'FAIL'}: {self.title} "
                f"[{elapsed:.2f} s, budget {self.budget} s, tolerance exact]" + (f" ({extra})" if extra else ""))
        ACCEPTANCE_LINES.append(line)
        print(line)
        if exc_type is None and over:
            raise AssertionError(f"criterion {self.number} exceeded its {self.budget} s budget ({elapsed:.2f} s)")
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
