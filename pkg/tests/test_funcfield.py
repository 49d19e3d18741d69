import pytest
from hypothesis import given, settings, strategies as st

from funcfield import (BivarSym, Place, PlaceSet, Poly, RatFunc, SymPoly,
                       gcd, is_irreducible, is_T_integer, is_T_unit,
                       parse_ratfunc, poly_factor, product_formula_check,
                       squarefree_decomposition, sym_decompose,
                       unit_group_rank, valuation)
from gf import get_ctx
from strategies import polys, ratfuncs


def P(ctx, text):
    return Poly.parse(ctx, text)


def R(ctx, text):
    return parse_ratfunc(ctx, text)


def factor_set(f):
    return {(str(g), m) for g, m in poly_factor(f).factors}


def test_factor_examples(F2, F7):
    assert factor_set(P(F2, 'x^2+x')) == {('x', 1), ('x+1', 1)}
    assert factor_set(P(F2, 'x^2+1')) == {('x+1', 2)}
    assert factor_set(P(F7, 'x^2+1')) == {('x^2+1', 1)}
    assert poly_factor(P(F7, '3*x^2+3')).lc == F7(3)


def test_factor_zero(F2):
    with pytest.raises(ValueError):
        poly_factor(Poly.zero(F2))


def test_factor_derivative_zero(F3):
    # (x^3 + 1)^2 = (x + 1)^6 has zero derivative
    f = P(F3, 'x^6 + 2*x^3 + 1')
    assert factor_set(f) == {('x+1', 6)}
    assert [m for _, m in squarefree_decomposition(f)] == [6]
    g = P(F3, 'x^3 + x')
    assert factor_set(g) == {('x', 1), ('x^2+1', 1)}


@settings(max_examples=200)
@given(polys(max_degree=12, nonzero=True))
def test_factor_roundtrip(f):
    fac = poly_factor(f)
    prod = Poly.const(f.ctx, fac.lc)
    for g, m in fac.factors:
        assert g.is_monic() and is_irreducible(g)
        prod = prod * g ** m
    assert prod == f


def test_valuation_examples(F2):
    x = Place.parse(F2, 'x')
    inf = Place.infinity(F2)
    x1 = Place.parse(F2, 'x+1')
    assert valuation(R(F2, 'x^3/(x+1)'), x) == 3
    assert valuation(R(F2, 'x^2'), inf) == -2
    assert valuation(R(F2, 'x/(x+1)'), x1) == -1
    assert valuation(RatFunc(Poly.zero(F2)), x) == float('inf')


def test_place_must_be_irreducible(F2):
    with pytest.raises(ValueError):
        Place.parse(F2, 'x^2+1')


def test_product_formula_examples(F2):
    for text in ['x/(x+1)', 'x^2', '(x^2+x+1)/x']:
        assert product_formula_check(R(F2, text)) == 0
    with pytest.raises(ValueError):
        product_formula_check(RatFunc(Poly.zero(F2)))


@settings(max_examples=500)
@given(ratfuncs())
def test_product_formula(a):
    assert product_formula_check(a) == 0


@given(st.sampled_from([2, 3, 7]).flatmap(
    lambda p: st.tuples(ratfuncs(p=p), ratfuncs(p=p))))
def test_valuation_additive(pair):
    a, b = pair
    support = set(a.divisor()) | set(b.divisor())
    for v in support:
        assert valuation(a * b, v) == valuation(a, v) + valuation(b, v)


def test_T_integers_and_units(F2):
    T_inf = PlaceSet.of(F2)
    T_x = PlaceSet.parse(F2, 'inf,x')
    x = R(F2, 'x')
    assert is_T_integer(x, T_inf) and not is_T_unit(x, T_inf)
    inv = R(F2, '1/x')
    assert is_T_integer(inv, T_x) and is_T_unit(inv, T_x)
    assert not is_T_integer(inv, T_inf)
    assert is_T_unit(R(F2, 'x^12'), T_x)
    assert not is_T_unit(R(F2, 'x^12*(x+1)'), T_x)


def test_placeset_parse(F2):
    T = PlaceSet.parse(F2, 'x, x+1')
    assert Place.infinity(F2) in T
    assert len(T) == 3
    assert str(T) == 'inf,x,x+1'
    with pytest.raises(ValueError):
        PlaceSet.parse(F2, 'x,x')


@pytest.mark.parametrize('text,rank', [('', 0), ('x', 1), ('x,x+1', 2)])
def test_unit_group_rank(F2, text, rank):
    T = PlaceSet.parse(F2, text)
    assert unit_group_rank(T) == rank == len(T) - 1


def test_ratfunc_canonical(F3):
    a = R(F3, '(x^2-1)/(2*x+2)')
    assert a.den.is_monic()
    assert gcd(a.num, a.den).is_one()
    assert a == R(F3, '(2*x+1)')
    assert str(R(F3, 'x/(x+1)')) == 'x/(x+1)'


@given(polys())
def test_pth_components(f):
    comps = f.p_components()
    x = Poly.x(f.ctx)
    total = Poly.zero(f.ctx)
    for i, c in enumerate(comps):
        total = total + c.frobenius() * x ** i
    assert total == f


# Symmetric backend.

def test_sym_decompose_examples(F7):
    assert str(sym_decompose(BivarSym.parse(F7, 'x^2 + y^2'))) \
        == 'e1^2+5*e2'
    assert sym_decompose(BivarSym.parse(F7, 'x + 2*y')) is None
    assert str(sym_decompose(BivarSym.parse(F7, 'x^3 + y^3'))) \
        == 'e1^3+4*e1*e2'


@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 3)),
                       st.integers(1, 6), max_size=6))
def test_sym_decompose_roundtrip(terms):
    ctx = get_ctx(7)
    g = SymPoly(ctx, terms)
    f = g.expand()
    h = sym_decompose(f)
    assert h is not None
    assert h.expand() == f
    assert h == terms


def test_bivar_sigma(sym7):
    s, t = sym7
    assert t.sigma() == BivarSym.parse(s.ctx, '2*x + 3*y')
    assert (s * t.sigma()).sigma() == s.sigma() * t
    assert (s + s.sigma()).is_symmetric()
    assert not t.is_symmetric()


def test_bivar_divexact(sym7):
    s, t = sym7
    d = s - s.sigma()
    assert (d * t).divexact(d) == t
    assert t.divexact(d) is None
