import itertools
from fractions import Fraction as F

import pytest

from popsample.measure import FinitePopulationSpace, RandomVariable, make_classical
from popsample.sampler import FiniteSampler, uniform_experiment


def without_replacement(N, n=2):
    """Uniform over ordered tuples of distinct elements; marginally uniform, not simple."""
    table = tuple(itertools.permutations(range(N), n))
    return FiniteSampler(uniform_experiment(len(table)), n, table, N)


def constant_sampler(N, n, t=None, M=2):
    t = t or (0,) * n
    return FiniteSampler(uniform_experiment(M), n, (t,) * M, N)


def fixture_variables(N):
    """Identity, constant and a two-valued variable over N elements."""
    return {
        "identity": RandomVariable(tuple(range(N))),
        "constant": RandomVariable((F(3, 2),) * N),
        "two_valued": RandomVariable(tuple(0 if i < (N + 1) // 2 else 1 for i in range(N))),
    }


@pytest.fixture
def skewed():
    return FinitePopulationSpace((F(1, 2), F(1, 3), F(1, 6)))


@pytest.fixture
def classical3():
    return make_classical(3)


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    marker = getattr(report, "acceptance", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[marker] = report.outcome


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("acceptance")
    if m is not None:
        outcome.get_result().acceptance = m.args


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), outcome in sorted(_ACCEPTANCE.items()):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {title}")
