import pytest
from hypothesis import settings

from eulerlab.numerics import PrecisionContext

settings.register_profile("eulerlab", deadline=None, max_examples=25, derandomize=True)
settings.load_profile("eulerlab")


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(digits=30)


@pytest.fixture(scope="session")
def ctx20():
    return PrecisionContext(digits=20)


@pytest.fixture(scope="session")
def ctx15():
    return PrecisionContext(digits=15)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
