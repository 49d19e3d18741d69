import pytest
from hypothesis import given, strategies as st

from gf import FqElem, fq_arith, fq_frobenius, fq_pth_root, get_ctx
from misctypes import ConfigError, ContextMismatch

FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (7, 1), (7, 2)]


def test_arith_examples(F2, F4, F7):
    assert fq_arith(F2(1), F2(1), 'add') == F2(0)
    z = FqElem(F4, F4.generator)
    assert str(fq_arith(z, z, 'mul')) == 'z+1'
    assert fq_arith(F7(3), F7(2), 'div') == F7(5)


def test_arith_errors(F2, F7):
    with pytest.raises(ZeroDivisionError):
        fq_arith(F7(3), F7(0), 'div')
    with pytest.raises(ContextMismatch):
        fq_arith(F2(1), F7(1), 'add')


def test_frobenius_examples(F4, F7):
    z = FqElem(F4, F4.generator)
    assert str(fq_frobenius(z, 1)) == 'z+1'
    assert fq_frobenius(z, 2) == z
    assert fq_frobenius(F7(3), 1) == F7(3)
    with pytest.raises(ValueError):
        fq_frobenius(z, -1)


def test_pth_root_examples(F2, F4, F7):
    assert fq_pth_root(F2(1)) == F2(1)
    assert str(fq_pth_root(F4.parse('z+1'))) == 'z'
    assert fq_pth_root(F7(6)) == F7(6)


def test_parse_format(F4):
    for a in F4.elements():
        assert F4.parse(F4.format(a)).value == a


def test_invalid_contexts():
    with pytest.raises(ConfigError):
        get_ctx(4)
    with pytest.raises(ConfigError):
        get_ctx(2, 2, (1, 0, 1))


@pytest.mark.parametrize('p,k', FIELDS)
def test_multiplicative_order(p, k):
    ctx = get_ctx(p, k)
    for a in ctx.nonzero():
        assert ctx.pow(a, ctx.q - 1) == 1


@pytest.mark.parametrize('p,k', FIELDS)
def test_frobenius_period(p, k):
    ctx = get_ctx(p, k)
    for a in ctx.elements():
        assert ctx.frob(a, k) == a
        assert ctx.pth_root(ctx.frob(a)) == a


@given(st.sampled_from(FIELDS), st.data())
def test_freshmans_dream(field, data):
    ctx = get_ctx(*field)
    a = FqElem(ctx, data.draw(st.integers(0, ctx.q - 1)))
    b = FqElem(ctx, data.draw(st.integers(0, ctx.q - 1)))
    assert (a + b) ** ctx.p == a ** ctx.p + b ** ctx.p


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(field, data):
    ctx = get_ctx(*field)
    a, b, c = (FqElem(ctx, data.draw(st.integers(0, ctx.q - 1)))
               for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    if b:
        assert (a / b) * b == a


def test_extension_embedding(F4):
    big, embed = F4.extension(2)
    assert big.q == 16
    for a in F4.elements():
        for b in F4.elements():
            assert embed(F4.mul(a, b)) == big.mul(embed(a), embed(b))
            assert embed(F4.add(a, b)) == big.add(embed(a), embed(b))
