import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from pettylab.measures import check_directions, from_arrays  # noqa: E402

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    ok, _ = _criteria.get(num, (True, title))
    failed = call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception)
    _criteria[num] = (ok and not failed, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        ok, title = _criteria[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  [{num:2d}] {title}")


def random_measure(rng, dim, m, wlo=0.5, whi=2.0):
    """Hemisphere-valid measure with ``m`` atoms, redrawn until valid."""
    while True:
        U = rng.standard_normal((m, dim))
        U /= np.linalg.norm(U, axis=1)[:, None]
        if check_directions(U)[0]:
            return from_arrays(U, rng.uniform(wlo, whi, m))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def square_measure():
    return from_arrays([[1, 0], [0, 1], [-1, 0], [0, -1]], [1, 1, 1, 1])
