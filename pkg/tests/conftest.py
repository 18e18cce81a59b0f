import mpmath
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _working_precision():
    # individual tests rely on mpmath's global precision being restored
    with mpmath.workdps(45):
        yield


_ACCEPTANCE = []


@pytest.fixture
def acceptance():
    """``acceptance(criterion, ok, detail)`` records one PASS/FAIL line and prints it."""

    def record(criterion, ok, detail=""):
        line = "%s %s %s" % ("PASS" if ok else "FAIL", criterion, detail)
        _ACCEPTANCE.append(line.rstrip())
        print(line, flush=True)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
