import pytest

from lutmod.core import build_basic_plan, build_grouped_plan

KYBER_Q = 3329
DILITHIUM_Q = 8380417


@pytest.fixture(scope="session")
def basic13():
    return build_basic_plan(13, 8)


@pytest.fixture(scope="session")
def grouped13():
    return build_grouped_plan(13, 8, [2, 2])


@pytest.fixture(scope="session")
def kyber_plan():
    return build_grouped_plan(KYBER_Q, 24, [7, 6])


@pytest.fixture(scope="session")
def dilithium_plan():
    return build_grouped_plan(DILITHIUM_Q, 46, [6, 6, 6, 6])
