import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion."""

    def record(k: int, ok: bool, detail: str, elapsed: float, limit: float) -> bool:
        timely = elapsed < limit
        status = "PASS" if ok and timely else "FAIL"
        line = f"{status} criterion {k}: {detail} ({elapsed:.2f}s, limit {limit:g}s)"
        _LINES.append(line)
        print(line)
        return ok and timely

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
