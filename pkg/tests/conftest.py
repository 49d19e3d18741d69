import random

import pytest

from funcfield import BivarSym
from gf import get_ctx
from tower import Tower


@pytest.fixture
def F2():
    return get_ctx(2)


@pytest.fixture
def F3():
    return get_ctx(3)


@pytest.fixture
def F4():
    return get_ctx(2, 2)


@pytest.fixture
def F7():
    return get_ctx(7)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(scope='session')
def a1_tower():
    """y^4 + x^2 y^2 + y + 1 over F_2(x)."""
    return Tower.build(get_ctx(2), [dict(label='y',
                                         poly='y^4 + x^2*y^2 + y + 1')])


@pytest.fixture(scope='session')
def eta_tower():
    """s^4 + x^4 s^2 + x^3 s + x + 1 over F_2(x)."""
    return Tower.build(get_ctx(2), [dict(
        label='s', poly='s^4 + x^4*s^2 + x^3*s + x + 1')])


@pytest.fixture(scope='session')
def sqrt_x_tower():
    """y^2 = x over F_3(x)."""
    return Tower.build(get_ctx(3), [dict(label='y', poly='y^2 - x')])


@pytest.fixture
def sym7():
    ctx = get_ctx(7)
    return BivarSym.x(ctx), BivarSym.parse(ctx, '3*x + 2*y')
