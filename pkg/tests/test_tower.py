import pytest
from hypothesis import given, settings, strategies as st

from funcfield import Poly, RatFunc
from gf import get_ctx
from misctypes import Certificate, InseparableError, TowerError
from strategies import polys
from tower import (GaloisMap, Tower, backend_of, conjugate_difference_unit,
                   conjugate_product_discriminant, conjugates, discriminant,
                   frobenius_power, get_sym_tower, minimal_polynomial)


def x_of(tower):
    return tower.scalar(RatFunc.x(tower.ctx))


def test_build_certifies(sqrt_x_tower, a1_tower):
    assert sqrt_x_tower.degree == 2
    assert sqrt_x_tower.levels[0].certificate != Certificate.assumed
    assert a1_tower.levels[0].certificate != Certificate.assumed


@pytest.mark.parametrize('p,poly,error', [
    (3, '2*y^2 - x', TowerError),
    (3, 'y - x', TowerError),
    (2, 'y^2 - x', InseparableError),
    (3, 'y^2 - x^2', TowerError),
    ])
def test_build_rejects(p, poly, error):
    with pytest.raises(error):
        Tower.build(get_ctx(p), [dict(label='y', poly=poly)])


@pytest.mark.parametrize('label', ['x', 'z', '1y'])
def test_build_rejects_label(label):
    with pytest.raises(TowerError):
        Tower.build(get_ctx(3), [dict(label=label, poly=f'{label}^2 - 2')])


def test_assumed_level_logged(caplog):
    tower = Tower.build(get_ctx(3), [dict(label='y', poly='y^2 - x',
                                          assume=True)])
    assert tower.levels[0].certificate == Certificate.assumed
    assert 'assumed' in caplog.text


def test_two_level_tower():
    tower = Tower.build(get_ctx(3), [dict(label='y', poly='y^2 - x'),
                                     dict(label='w', poly='w^2 - y')])
    assert tower.degree == 4
    assert tower.levels[1].certificate != Certificate.assumed
    w = tower.gen('w')
    assert w ** 4 == x_of(tower)
    assert minimal_polynomial(w).degree == 4


def test_reducible_upper_level():
    with pytest.raises(TowerError, match='reducible'):
        Tower.build(get_ctx(3), [dict(label='y', poly='y^2 - x'),
                                 dict(label='w', poly='w^2 - y^2')])


def test_declared_upper_level_is_kept():
    tower = Tower.build(get_ctx(3), [dict(label='y', poly='y^2 - x'),
                                     dict(label='w', poly='w^2 - y^2',
                                          assume=True)])
    assert tower.levels[1].certificate == Certificate.assumed
    assert tower.levels[1].witness == 'declared'


def test_arithmetic(sqrt_x_tower):
    y = sqrt_x_tower.gen('y')
    x = x_of(sqrt_x_tower)
    assert y * y == x
    assert y * y.inverse() == sqrt_x_tower.one
    assert (y / x) * x == y
    assert y.trace() == 0
    assert y.norm() == -RatFunc.x(sqrt_x_tower.ctx)
    assert frobenius_power(y, 1) == x * y
    assert sqrt_x_tower.parse('x*y + 1') == x * y + 1


def test_discriminants(sqrt_x_tower, a1_tower, eta_tower):
    x = RatFunc.x(get_ctx(2))
    assert discriminant(sqrt_x_tower.gen('y')) == RatFunc.x(get_ctx(3))
    assert discriminant(x_of(a1_tower) * a1_tower.gen('y')) == x ** 12
    assert discriminant(eta_tower.gen('s')) == x ** 12


def test_discriminant_methods_agree(eta_tower):
    s = eta_tower.gen('s')
    for t in [s, x_of(eta_tower) * s + 1]:
        assert discriminant(t, 'basis') == discriminant(t, 'resultant')


def test_discriminant_of_scalar(sqrt_x_tower):
    with pytest.raises(ValueError):
        discriminant(x_of(sqrt_x_tower))
    with pytest.raises(TowerError):
        discriminant(x_of(sqrt_x_tower), 'basis')


@settings(max_examples=100)
@given(polys(p=3, max_degree=3), polys(p=3, max_degree=3, nonzero=True),
       st.integers(0, 1))
def test_discriminant_transformation(sqrt_x_tower, a, b, e):
    """disc(a + b*t^(p^e)) = b^(d(d-1)) * disc(t)^(p^e)."""
    tower = sqrt_x_tower
    y = tower.gen('y')
    t = tower.scalar(a) + tower.scalar(b) * frobenius_power(y, e)
    expected = RatFunc(b) ** 2 * discriminant(y) ** (3 ** e)
    assert discriminant(t) == expected


def test_conjugates(sqrt_x_tower):
    tower = sqrt_x_tower
    y = tower.gen('y')
    sigma = GaloisMap.parse(tower, {'y': '-y'})
    cs = conjugates(y, [GaloisMap.identity(tower), sigma])
    assert cs.conjugates == [y, -y]
    assert conjugate_product_discriminant(cs) == discriminant(y)
    assert sigma.compose(sigma)(y) == y
    with pytest.raises(TowerError):
        conjugates(y, [GaloisMap.identity(tower)])


def test_conjugate_difference_unit(sqrt_x_tower, sym7):
    tower = sqrt_x_tower
    y = tower.gen('y')
    x = x_of(tower)
    sigma = GaloisMap.parse(tower, {'y': '-y'})
    maps = [GaloisMap.identity(tower), sigma]
    cs = conjugates(y, maps)
    assert conjugate_difference_unit(cs, cs, 0, 1) == tower.one
    # a*s^3 + b gives a*(s_0 - s_1)^2 = a*(2y)^2 over F_3
    for a, b in [(tower.one, x), (x, tower.one)]:
        ct = conjugates(a * y ** 3 + b, maps)
        assert conjugate_difference_unit(cs, ct, 0, 1) == a * (y + y) ** 2
        assert conjugate_difference_unit(cs, ct, 1, 0) == a * x
    with pytest.raises(ValueError):
        conjugate_difference_unit(cs, cs, 1, 1)
    s, t = sym7
    assert conjugate_difference_unit(conjugates(s), conjugates(t), 0, 1) == 1


def test_bad_galois_map(sqrt_x_tower):
    with pytest.raises(TowerError):
        GaloisMap.parse(sqrt_x_tower, {'y': 'y + 1'})
    with pytest.raises(TowerError):
        GaloisMap.parse(sqrt_x_tower, {'w': 'y'})


def test_symmetric_backend(sym7):
    s, t = sym7
    backend = backend_of(t)
    assert backend is get_sym_tower(t.ctx)
    assert backend.degree_of(s + s.sigma()) == 1
    assert backend.degree_of(t) == 2
    assert discriminant(t) == (t - t.sigma()) ** 2
    assert backend.constant_ratio(t.scale(3), t) == 3
    assert backend.constant_ratio(s, t) is None
    assert frobenius_power(t, 1) == t ** 7
    cs = conjugates(t)
    assert conjugate_product_discriminant(cs) == discriminant(t)


def test_backend_protocol(sqrt_x_tower):
    y = sqrt_x_tower.gen('y')
    x = x_of(sqrt_x_tower)
    backend = backend_of(y)
    assert backend is sqrt_x_tower
    assert backend.degree_of(y) == 2
    assert backend.degree_of(x) == 1
    assert backend.is_base_integral(x)
    assert not backend.is_base_unit(x)
    assert backend.is_base_unit(sqrt_x_tower.scalar(Poly.const(
        sqrt_x_tower.ctx, 2)))
    assert backend.quadratic_conjugate(y) == -y
