import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (number, description, passed)."""

    def record(number, text, passed, detail=""):
        _ACCEPTANCE.append((number, text, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, passed, detail in sorted(_ACCEPTANCE, key=lambda t: t[0]):
        status = "PASS" if passed else "FAIL"
        extra = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"[{status}] criterion {number:2d}: {text}{extra}")
