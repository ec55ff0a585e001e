import pytest

from realaut.textfmt import FIXTURES, load_fixture


@pytest.fixture(scope="session")
def figs():
    return {name: load_fixture(name) for name in FIXTURES}
