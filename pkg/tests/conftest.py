import pytest

from atx.graphs import chain_of_diamonds, make_graph


def cycle(n):
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return make_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def subdivided_k4():
    """K4 with every edge subdivided once: 10 vertices, 12 edges."""
    edges = []
    nxt = 4
    for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]:
        edges += [(u, nxt), (nxt, v)]
        nxt += 1
    return make_graph(10, edges)


@pytest.fixture(scope="session")
def d1():
    return chain_of_diamonds(1)[0]


@pytest.fixture(scope="session")
def d2():
    return chain_of_diamonds(2)[0]


@pytest.fixture(scope="session")
def d3():
    return chain_of_diamonds(3)[0]


@pytest.fixture(scope="session")
def k3():
    return complete(3)


@pytest.fixture(scope="session")
def k4():
    return complete(4)


@pytest.fixture(scope="session")
def c4():
    return cycle(4)


@pytest.fixture(scope="session")
def c5():
    return cycle(5)


@pytest.fixture(scope="session")
def c6():
    return cycle(6)
