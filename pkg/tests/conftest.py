import pytest
from hypothesis import HealthCheck, settings

from qbundle import get_algebra

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def alg2():
    return get_algebra(2)


@pytest.fixture(scope="session")
def alg3():
    return get_algebra(3)


def gens2(alg):
    """a, b, c, d for n = 2."""
    return alg.gen(1, 1), alg.gen(1, 2), alg.gen(2, 1), alg.gen(2, 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(VERDICTS):
        terminalreporter.write_line(VERDICTS[num])
