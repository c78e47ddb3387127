"""Shared bodies for the test modules."""

from pathlib import Path

import numpy as np
import pytest

from renyi_convex import bodies

REPO = Path(__file__).resolve().parent.parent
BODY_DIR = REPO / "bodies"


@pytest.fixture(scope="session")
def body_dir() -> Path:
    return BODY_DIR


@pytest.fixture(scope="session")
def disk():
    return bodies.ball(1.0, 2)


@pytest.fixture(scope="session")
def ellipse():
    return bodies.ellipsoid(np.diag([2.0, 1.0]))


@pytest.fixture(scope="session")
def lr3():
    return bodies.lr_ball(3.0, 2)


@pytest.fixture(scope="session")
def square():
    return bodies.polytope([[1, 1], [-1, 1], [-1, -1], [1, -1]])


@pytest.fixture(scope="session")
def ball3():
    return bodies.ball(1.0, 3)


@pytest.fixture(scope="session")
def trefoil():
    # h = 1 + 0.1 cos(3 t): f = 1 - 0.8 cos(3 t) > 0
    return bodies.smooth2d(cos=[1.0, 0.0, 0.0, 0.1])
