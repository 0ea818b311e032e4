"""
Shared fixtures for the quiverar test suite.

Every corpus algebra is built once per session from its workspace file in
``tests/data``.
"""

from pathlib import Path
from typing import Tuple

import pytest

from quiverar.algebra.bound import BoundQuiverAlgebra
from quiverar.workspace import Workspace, parse

DATA = Path(__file__).parent / "data"


def load(name: str) -> Tuple[Workspace, BoundQuiverAlgebra]:
    workspace = parse(DATA / f"{name}.quiver")
    return workspace, workspace.build()


@pytest.fixture(scope="session")
def a2() -> BoundQuiverAlgebra:
    return load("a2")[1]


@pytest.fixture(scope="session")
def a3_bound() -> BoundQuiverAlgebra:
    return load("a3_bound")[1]


@pytest.fixture(scope="session")
def a3() -> BoundQuiverAlgebra:
    return load("a3")[1]


@pytest.fixture(scope="session")
def kronecker() -> BoundQuiverAlgebra:
    return load("kronecker")[1]


@pytest.fixture(scope="session")
def loop_stable() -> BoundQuiverAlgebra:
    return load("loop_stable")[1]


@pytest.fixture(scope="session")
def loop_square() -> BoundQuiverAlgebra:
    return load("loop_square")[1]


@pytest.fixture(scope="session")
def fp_window() -> BoundQuiverAlgebra:
    return load("fp_window")[1]


@pytest.fixture(scope="session")
def fdim_window() -> BoundQuiverAlgebra:
    return load("fdim_window")[1]


@pytest.fixture
def data_dir() -> Path:
    return DATA
