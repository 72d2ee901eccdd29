import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cmfields.cmreflex import cm_check
from cmfields.numfield import NumberField
from cmfields.orders import maximal_order
from cmfields.unipoly import UniPoly

CORPUS_POLYS = {
    "gauss": (1, 0, 1),
    "eisenstein": (1, 1, 1),
    "sqrt-5": (5, 0, 1),
    "zeta5": (1, 1, 1, 1, 1),
    "quartic": (3, 0, 6, 0, 1),
}

_fields = {}


def corpus_field(name):
    if name not in _fields:
        _fields[name] = NumberField(UniPoly(list(CORPUS_POLYS[name])))
    return _fields[name]


@pytest.fixture(scope="session")
def gauss():
    return corpus_field("gauss")


@pytest.fixture(scope="session")
def eisenstein():
    return corpus_field("eisenstein")


@pytest.fixture(scope="session")
def sqrt5():
    return corpus_field("sqrt-5")


@pytest.fixture(scope="session")
def zeta5():
    return corpus_field("zeta5")


@pytest.fixture(scope="session")
def quartic():
    return corpus_field("quartic")


@pytest.fixture(scope="session")
def gauss_cm(gauss):
    return cm_check(gauss)


@pytest.fixture(scope="session")
def sqrt5_cm(sqrt5):
    return cm_check(sqrt5)


@pytest.fixture(scope="session")
def zeta5_cm(zeta5):
    return cm_check(zeta5)


@pytest.fixture(scope="session")
def quartic_cm(quartic):
    return cm_check(quartic)
