import pytest

from bergspec.scenario import make_builtin


@pytest.fixture(scope="session")
def strip_unweighted():
    return make_builtin("strip_flow", 2.0)


@pytest.fixture(scope="session")
def strip_weighted():
    return make_builtin("strip_flow", 2.0, c=0.4, s=0.7)


@pytest.fixture(scope="session")
def half_strip_weighted():
    return make_builtin("half_strip", 2.0, c=0.4, s=0.7)


@pytest.fixture(scope="session")
def trident_unweighted():
    return make_builtin("trident", 2.0)


@pytest.fixture(scope="session")
def trident_weighted():
    return make_builtin("trident", 2.0, d=0.5)
