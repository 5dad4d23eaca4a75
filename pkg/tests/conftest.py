import os

import pytest

from cubeslides import trees as tr
from cubeslides.rng import CubeRandom

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
WITNESSES = os.path.join(FIXTURES, "witnesses.json")

# upright reference tree with signature (2,3,2)
REF_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (4, 1), (4, 2), (3, 3)]
REF_MASK = 2421

_q3 = None


def q3_trees():
    global _q3
    if _q3 is None:
        _q3 = list(tr.enumerate_spanning_trees(3))
    return _q3


def sampled_trees(n, count, seed=7):
    rng = CubeRandom(seed).child(n)
    return [tr.random_spanning_tree(n, rng=rng) for _ in range(count)]


@pytest.fixture(scope="session")
def all_q3():
    return q3_trees()


@pytest.fixture
def ref_tree():
    return tr.from_edges(3, REF_EDGES)


# criterion number -> (title, outcome)
CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    num, title = mark.args
    prev = CRITERIA.get(num, (title, True))[1]
    CRITERIA[num] = (title, prev and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        title, ok = CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}")
