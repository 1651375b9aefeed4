import logging
import os

import pytest

from app.config import Config
from app.modules.space import Space

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


@pytest.fixture(autouse=True)
def _detach_ultratree_log_handlers():
    # test isolation: handlers attached during a test may point at pytest's
    # per-test capture streams, which are closed once the test ends
    yield
    ultratree_logger = logging.getLogger("ultratree")
    for handler in ultratree_logger.handlers[:]:
        ultratree_logger.removeHandler(handler)


def fixture_path(name):
    return os.path.join(FIXTURES_DIR, name)


@pytest.fixture
def p2():
    return Space.from_matrix(["a", "b"], [[0, 1], [1, 0]])


@pytest.fixture
def e3():
    return Space.from_matrix(["a", "b", "c"], [[0, 1, 1], [1, 0, 1], [1, 1, 0]])


@pytest.fixture
def r4():
    # chain tree: p1 splits off at 3, p2 at 2, p3 and p4 at 1
    return Space.from_matrix(
        ["p1", "p2", "p3", "p4"],
        [[0, 3, 3, 3], [3, 0, 2, 2], [3, 2, 0, 1], [3, 2, 1, 0]],
    )


@pytest.fixture
def f3():
    return Space.from_matrix(
        ["a", "b", "c", "d"],
        [[0, 1, 4, 4], [1, 0, 4, 4], [4, 4, 0, 2], [4, 4, 2, 0]],
    )


@pytest.fixture
def nu3():
    return Space.from_matrix(
        ["x1", "x2", "x3"], [[0, 4, 2], [4, 0, 3], [2, 3, 0]]
    )


@pytest.fixture
def u6():
    # six balls: four singletons, {a, b} and the whole space
    return Space.from_matrix(
        ["a", "b", "c", "d"],
        [[0, 1, 2, 2], [1, 0, 2, 2], [2, 2, 0, 2], [2, 2, 2, 0]],
    )


@pytest.fixture
def one_point():
    return Space.from_matrix(["solo"], [[0]])


@pytest.fixture
def config():
    return Config({})
