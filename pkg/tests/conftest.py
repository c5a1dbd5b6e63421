# tests/conftest.py

import os

import pytest

from minorkit import config
from minorkit.core.graph import complete_bipartite, complete_graph, cycle_graph, path_graph, petersen_graph


@pytest.fixture(autouse=True)
def fresh_budgets(monkeypatch):
    """Budgets come from the environment; drop the cached copy around every test."""
    for key in list(os.environ):
        if key.startswith(config.ENV_PREFIX):
            monkeypatch.delenv(key)
    config.get_budgets.cache_clear()
    yield
    config.get_budgets.cache_clear()


@pytest.fixture
def k5():
    return complete_graph(5)


@pytest.fixture
def k33():
    return complete_bipartite(3, 3)


@pytest.fixture
def kuratowski(k5, k33):
    return [k5, k33]


@pytest.fixture
def small_graphs():
    return {
        "P4": path_graph(4),
        "C5": cycle_graph(5),
        "K4": complete_graph(4),
        "K5": complete_graph(5),
        "K33": complete_bipartite(3, 3),
        "petersen": petersen_graph(),
    }
