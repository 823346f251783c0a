import pytest

from gwse.fixtures import persistence_game, persistence_templates, visit_game, visit_templates
from gwse.templates import SpecProfile


@pytest.fixture
def visit():
    return visit_game()


@pytest.fixture
def persistence():
    return persistence_game()


@pytest.fixture
def visit_profile(visit):
    return SpecProfile(visit, visit_templates())


@pytest.fixture
def persistence_profile(persistence):
    return SpecProfile(persistence, persistence_templates())
