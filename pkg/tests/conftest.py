import pytest

from dessin_forge.groups import build_group
from dessin_forge.specs import AbelianSquare, Cyclic, Family, Metacyclic64, Quaternion


@pytest.fixture(scope="session")
def q8():
    return build_group(Quaternion())


@pytest.fixture(scope="session")
def m64():
    return build_group(Metacyclic64())


@pytest.fixture(scope="session")
def heis3():
    return build_group(Family("i", 3, 1, 1))


@pytest.fixture(scope="session")
def c12():
    return build_group(Cyclic(12))


@pytest.fixture(scope="session")
def v4():
    return build_group(AbelianSquare(2, 1))
