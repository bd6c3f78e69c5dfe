import pytest

_LINES = {}


@pytest.fixture
def criterion():
    """criterion(n, title, parts) records one pass/fail line and asserts every part."""

    def record(n, title, parts):
        bad = [k for k, v in parts.items() if not v]
        status = "PASS" if not bad else "FAIL"
        detail = "" if not bad else " (failing: " + ", ".join(bad) + ")"
        _LINES[n] = f"criterion {n:2d}: {status} {title}{detail}"
        print(_LINES[n])
        assert not bad, _LINES[n]
    return record


def note_criterion(n, line):
    _LINES[n] = line


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_LINES):
        terminalreporter.write_line(_LINES[n])
