from __future__ import annotations

import pytest

_CRITERIA: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion for the summary."""
    def record(number: int, title: str, ok: bool, detail: str = ""):
        _CRITERIA[number] = (title, ok, detail)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, detail = _CRITERIA[number]
        status = "PASS" if ok else "FAIL"
        line = f"{status}  criterion {number}: {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
