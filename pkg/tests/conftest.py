import pytest

from cimlab.groups import (
    GroupIsomorphism,
    make_abelian,
    make_cyclic,
    make_generalized_quaternion,
    make_semidirect,
)


def negation_action(g):
    return GroupIsomorphism(g, g, tuple(g.inverse))


@pytest.fixture(scope="session")
def z8():
    return make_cyclic(8)


@pytest.fixture(scope="session")
def z9():
    return make_cyclic(9)


@pytest.fixture(scope="session")
def k4():
    return make_abelian([2, 2])


@pytest.fixture(scope="session")
def z3sq():
    return make_abelian([3, 3])


@pytest.fixture(scope="session")
def q8():
    return make_generalized_quaternion(8)


@pytest.fixture(scope="session")
def q16():
    return make_generalized_quaternion(16)


@pytest.fixture(scope="session")
def s3():
    z3 = make_cyclic(3)
    return make_semidirect(z3, 2, negation_action(z3))


@pytest.fixture(scope="session")
def d4():
    z4 = make_cyclic(4)
    return make_semidirect(z4, 2, negation_action(z4))


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: long-running checks, excluded with -m 'not slow'"
    )
