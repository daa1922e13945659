import pytest

from isospec.chains import natural_walk
from isospec.graphs import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
)


@pytest.fixture(scope="session")
def c4():
    return natural_walk(cycle_graph(4))


@pytest.fixture(scope="session")
def k3():
    return natural_walk(complete_graph(3))


@pytest.fixture(scope="session")
def k4():
    return natural_walk(complete_graph(4))


@pytest.fixture(scope="session")
def p3():
    return natural_walk(path_graph(3))


@pytest.fixture(scope="session")
def dicycle3():
    return natural_walk(cycle_graph(3, directed=True))


@pytest.fixture(scope="session")
def c6():
    return natural_walk(cycle_graph(6))


@pytest.fixture(scope="session")
def k2():
    return natural_walk(complete_graph(2))


@pytest.fixture(scope="session")
def k33():
    return natural_walk(complete_bipartite_graph(3, 3))
