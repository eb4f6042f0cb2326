import pytest
from hypothesis import HealthCheck, settings

from qsl2hom.homology import Setting
from qsl2hom.qsl2 import QSL2
from qsl2hom.scalars import make_field

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def F():
    return make_field("generic")


@pytest.fixture(scope="session")
def F2():
    return make_field("2")


@pytest.fixture(scope="session")
def A(F):
    return QSL2(F)


@pytest.fixture(scope="session")
def setting():
    cache = {}

    def get(lam="1", mu="1", q="generic"):
        key = (q, lam, mu)
        if key not in cache:
            cache[key] = Setting(q, lam, mu)
        return cache[key]

    return get


# one summary line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
