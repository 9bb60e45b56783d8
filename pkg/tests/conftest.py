import os

import pytest
from hypothesis import HealthCheck, settings

from nabasmajian import FieldModel, preset

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile(
    "ci", deadline=None, max_examples=50, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def Q2():
    return FieldModel.qp(2)


@pytest.fixture(scope="session")
def Q3():
    return FieldModel.qp(3)


@pytest.fixture(scope="session")
def L5():
    return FieldModel.laurent(5)


@pytest.fixture(scope="session")
def rep51():
    return preset("ex51").representation()


@pytest.fixture(scope="session")
def rep52():
    return preset("ex52").representation()


@pytest.fixture(scope="session")
def rep_v3():
    return preset("veronese3").representation()


def pytest_terminal_summary(terminalreporter):
    import sys
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
