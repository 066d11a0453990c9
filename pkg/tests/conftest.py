import pytest

from braidnomial.equation import build_equation
from braidnomial.tracker import label_base_roots


@pytest.fixture(scope="session")
def quintic():
    return build_equation(5, 3, 2, 7)


@pytest.fixture(scope="session")
def quintic_base(quintic):
    return label_base_roots(quintic)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
