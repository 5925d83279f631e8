import pytest

from spreadlab.core.config import settings
from spreadlab.models.rule import Rule
from spreadlab.services.graph_builder import complete, cycle, make_graph, path, star


@pytest.fixture
def c4():
    return cycle(4)

@pytest.fixture
def c3():
    return cycle(3)

@pytest.fixture
def p3():
    return path(3)

@pytest.fixture
def p4():
    return path(4)

@pytest.fixture
def k2():
    return complete(2)

@pytest.fixture
def k5():
    return complete(5)

@pytest.fixture
def star4():
    return star(4)

@pytest.fixture
def three_isolated():
    return make_graph(3, [])

@pytest.fixture
def k2_plus_isolated():
    return make_graph(3, [(0, 1)])

@pytest.fixture
def majority():
    return Rule.majority()

@pytest.fixture
def small_solver_limit(monkeypatch):
    monkeypatch.setattr(settings, "SOLVER_LIMIT", 6)
    return 6
