"""Shared fixtures: small fields and moduli reused across the suite.

Family construction is the expensive part, so every family-bearing
fixture is session-scoped and computed once.
"""

import pytest

from ffzeros import algebra, characters


@pytest.fixture(scope="session")
def K2():
    return algebra.field_make(2)


@pytest.fixture(scope="session")
def K3():
    return algebra.field_make(3)


@pytest.fixture(scope="session")
def K5():
    return algebra.field_make(5)


@pytest.fixture(scope="session")
def K4():
    return algebra.field_make(2, 2)


@pytest.fixture(scope="session")
def Q3_2(K3):
    # T^2 + 1, the worked reference modulus
    return characters.modulus_make(K3, (1, 0, 1))


@pytest.fixture(scope="session")
def Q3_3(K3):
    return characters.modulus_search(K3, 3)


@pytest.fixture(scope="session")
def Q3_4(K3):
    return characters.modulus_search(K3, 4)


@pytest.fixture(scope="session")
def Q2_3(K2):
    return characters.modulus_search(K2, 3)


@pytest.fixture(scope="session")
def Q5_2(K5):
    return characters.modulus_search(K5, 2)


@pytest.fixture(scope="session")
def fam3_2(Q3_2):
    return Q3_2.family_data(threads=2)


@pytest.fixture(scope="session")
def fam3_3(Q3_3):
    return Q3_3.family_data(threads=2)


@pytest.fixture(scope="session")
def fam3_4(Q3_4):
    return Q3_4.family_data(threads=2)
