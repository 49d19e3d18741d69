import pytest

import monorder
from funcfield import BivarSym, PlaceSet, Poly, RatFunc
from misctypes import NotIntegralError
from monorder import (MonOrder, SymMonOrder, disc_form_predicate,
                      disc_transform, fit_generator_relation, in_order,
                      in_order_cramer, make_order, orders_equal)
from tower import discriminant
from verify import EtaSequence, z_element


@pytest.fixture
def eta_setup(eta_tower):
    tower = eta_tower
    s = tower.gen('s')
    x = tower.scalar(RatFunc.x(tower.ctx))
    return tower, s, x


def test_z1_coordinates(eta_setup):
    tower, s, x = eta_setup
    etas = EtaSequence(Poly.parse(tower.ctx, 'x+1')).extend(2)
    z1 = z_element(tower, etas, 1)
    order = MonOrder(s)
    X = RatFunc.x(tower.ctx)
    assert order.express(z1) == [0, 1, X, 0]
    assert z1 in order
    assert orders_equal(z1, order)


@pytest.mark.parametrize('text,reason', [
    ('s + x', monorder.EQUAL),
    ('x*s', monorder.INDEX_NOT_UNIT),
    ('s^2', monorder.INDEX_NOT_UNIT),
    ('s/x', monorder.NOT_INTEGRAL),
    ('x', monorder.DEGREE_MISMATCH),
    ])
def test_orders_equal_reasons(eta_setup, text, reason):
    tower, s, x = eta_setup
    verdict = orders_equal(tower.parse(text), MonOrder(s))
    assert verdict.reason == reason
    assert bool(verdict) == (reason == monorder.EQUAL)


def test_orders_equal_over_T(eta_setup):
    tower, s, x = eta_setup
    T = PlaceSet.parse(tower.ctx, 'inf,x')
    order = make_order(s, T)
    assert orders_equal(x * s, order)
    assert orders_equal(s / x, order)
    assert in_order(s / x, order)
    assert not in_order(s / (x + 1), order)


def test_not_integral_generator(eta_setup):
    tower, s, x = eta_setup
    with pytest.raises(NotIntegralError):
        MonOrder(s / x)


def test_membership_cross_check(eta_setup):
    tower, s, x = eta_setup
    order = MonOrder(s)
    for t in [s ** 3 + x, s ** 5, s / x, (s + 1) / (x + 1), x ** 2 * s]:
        assert in_order(t, order) == in_order_cramer(t, order)


def test_disc_form_predicate(eta_setup):
    tower, s, x = eta_setup
    assert disc_form_predicate(s, PlaceSet.parse(tower.ctx, 'inf,x'))
    assert not disc_form_predicate(s, PlaceSet.of(tower.ctx))
    with pytest.raises(ValueError):
        disc_form_predicate(x, PlaceSet.of(tower.ctx))


def test_disc_transform(eta_setup):
    tower, s, x = eta_setup
    X = RatFunc.x(tower.ctx)
    D = discriminant(s)
    assert disc_transform(X, 2, D, 4) == discriminant(x * s ** 2 + 1)


def test_fit_generator_relation(eta_setup):
    tower, s, x = eta_setup
    X = RatFunc.x(tower.ctx)
    rel = fit_generator_relation(x * s ** 2 + 1, s)
    assert (rel.q, rel.e, rel.a, rel.b) == (2, 1, X, 1)
    assert rel.ratio == X ** 12 * X ** 12
    assert not rel.unit
    rel = fit_generator_relation(s + x, s)
    assert (rel.q, rel.a, rel.b, rel.unit) == (1, 1, X, True)
    assert fit_generator_relation(s ** 3, s, max_e=2) is None


def test_symmetric_order(sym7):
    s, t = sym7
    ctx = s.ctx
    order = make_order(s)
    assert isinstance(order, SymMonOrder)
    assert orders_equal(t, order)
    assert t in order
    x2 = BivarSym.parse(ctx, 'x^2')
    assert orders_equal(x2, order).reason == monorder.INDEX_NOT_UNIT
    e1 = BivarSym.e1(ctx)
    assert orders_equal(e1, order).reason == monorder.DEGREE_MISMATCH
    assert order.discriminant() == (s - s.sigma()) ** 2
    with pytest.raises(ValueError):
        SymMonOrder(e1)
