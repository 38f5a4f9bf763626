import pytest

from descriptorkb import fixture_path, load


@pytest.fixture
def fixture_file():
    return fixture_path()


@pytest.fixture
def home():
    """A fresh copy of the robot-at-home ontology (not yet reasoned)."""
    return load(fixture_path())
