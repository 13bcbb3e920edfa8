import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from wmba.field import QQ, GF  # noqa: E402
from wmba.fixtures import fixture  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GF101 = GF(101)
FIELDS = {"q": QQ, "gf101": GF101}
GROUPOIDS = ("interval", "z2", "z3", "z2iso")


@pytest.fixture(scope="session")
def interval():
    return fixture("interval")


@pytest.fixture(scope="session")
def z2():
    return fixture("z2")


@pytest.fixture(scope="session")
def z3():
    return fixture("z3")


@pytest.fixture(scope="session")
def z2iso():
    return fixture("z2iso")


@pytest.fixture(scope="session", params=["interval", "z2", "z3"])
def small(request):
    """The fixtures cheap enough for exhaustive per-test work."""
    return fixture(request.param)


def pytest_terminal_summary(terminalreporter):
    import acceptance_log
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance_log.RESULTS):
        terminalreporter.write_line(acceptance_log.format_line(n))
