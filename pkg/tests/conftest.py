import pytest

_CRITERIA = {}


@pytest.fixture
def report():
    """Record the outcome of an acceptance criterion for the summary block."""
    def _report(number, ok, detail):
        _CRITERIA[number] = (bool(ok), detail)
        return ok
    return _report


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
