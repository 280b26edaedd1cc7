import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from congmon import (FractionalIdeal, Modulus, ResidueSubgroup, parse_gamma,
                     parse_modulus, quadratic_field, rational_field)


@pytest.fixture(scope="session")
def Q():
    return rational_field()


@pytest.fixture(scope="session")
def Qi():
    return quadratic_field(-1)


@pytest.fixture(scope="session")
def Q2():
    return quadratic_field(2)


@pytest.fixture(scope="session")
def Qm5():
    return quadratic_field(-5)


@pytest.fixture(scope="session")
def Q5():
    return quadratic_field(5)


@pytest.fixture(scope="session")
def m5(Q):
    """The running example: infinite place times 5 over Q."""
    return parse_modulus(Q, "inf:0;fin:5")


@pytest.fixture(scope="session")
def gamma_trivial(m5):
    return ResidueSubgroup.trivial(m5)


@pytest.fixture(scope="session")
def gamma_full(m5):
    return ResidueSubgroup.full(m5)


def ideal_of(field, *gens):
    return FractionalIdeal.from_elements(field, [field.element(g) if isinstance(g, int) else g
                                                 for g in gens])
