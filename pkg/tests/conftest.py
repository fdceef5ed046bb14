"""
Pytest fixtures: named states.
"""
import pytest

from data_processing.StateFactory import StateFactory
from tests.corpus import bell_pairs


@pytest.fixture
def phi_plus():
    return StateFactory.bell(1)


@pytest.fixture
def ghz3():
    return StateFactory.ghz(3)


@pytest.fixture
def w3():
    return StateFactory.w(3)


@pytest.fixture
def product_010():
    """|1> (x) |2> (x) |1> in the 1-based labelling."""
    return StateFactory.basis([2, 2, 2], [1, 2, 1])


@pytest.fixture
def phi_plus_pairs():
    return bell_pairs()
