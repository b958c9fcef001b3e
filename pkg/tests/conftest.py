import pytest

from vermakit.chevalley import structure_constants
from vermakit.rootsys import parse_type
from vermakit.uea import EnvelopingAlgebra


def _alg(label):
    return EnvelopingAlgebra(structure_constants(parse_type(label)))


@pytest.fixture(scope="session")
def alg_a1():
    return _alg("A1")


@pytest.fixture(scope="session")
def alg_a2():
    return _alg("A2")


@pytest.fixture(scope="session")
def alg_a3():
    return _alg("A3")


@pytest.fixture(scope="session")
def alg_b2():
    return _alg("B2")


@pytest.fixture(scope="session")
def alg_g2():
    return _alg("G2")
