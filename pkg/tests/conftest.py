import pytest

_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion."""
    log = request.config.stash[_KEY]

    def record(number, ok, detail):
        log.append((number, ok, detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    log = sorted(config.stash.get(_KEY, []))
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in log:
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
