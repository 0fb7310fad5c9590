import pytest

from csmexact.operators import ModelParams
from csmexact.symfun import SymPoly, VariableTag


# The worked examples throughout the tests use this model
@pytest.fixture(scope='function')
def params_2():
    return ModelParams(2, lam=1, lam1=1, alpha=1)


@pytest.fixture(scope='function')
def params_1():
    return ModelParams(1, lam1=1)


@pytest.fixture(scope='function')
def m1_y():
    return SymPoly.monomial((1,), 2, VariableTag.Y)


@pytest.fixture(scope='function')
def m2_x():
    return SymPoly.monomial((2,), 2, VariableTag.X)
