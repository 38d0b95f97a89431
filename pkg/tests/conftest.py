import sys

import pytest
from hypothesis import HealthCheck, settings

from hallalg.catalog import make_spec
from hallalg.quiver import Quiver, QuiverCategory

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

A1 = Quiver.linear(1)
A2 = Quiver.linear(2)


@pytest.fixture(scope="session")
def a1():
    return QuiverCategory(A1, 2, (2,))


@pytest.fixture(scope="session")
def a2():
    return QuiverCategory(A2, 2, (1, 1))


@pytest.fixture(scope="session")
def a2q3():
    return QuiverCategory(A2, 3, (1, 1))


@pytest.fixture(scope="session")
def specs_a1(a1):
    cache = {}

    def get(algebra_id):
        if algebra_id not in cache:
            cache[algebra_id] = make_spec(algebra_id, a1)
        return cache[algebra_id]
    return get


@pytest.fixture(scope="session")
def specs_a2(a2):
    cache = {}

    def get(algebra_id):
        if algebra_id not in cache:
            cache[algebra_id] = make_spec(algebra_id, a2)
        return cache[algebra_id]
    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
