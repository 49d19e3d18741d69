"""Hypothesis strategies for field elements and polynomials."""

import hypothesis.strategies as st

from funcfield import Poly, RatFunc
from gf import get_ctx

PRIMES = [2, 3, 7]


@st.composite
def polys(draw, p=None, max_degree=8, nonzero=False):
    p = p or draw(st.sampled_from(PRIMES))
    ctx = get_ctx(p)
    coeffs = draw(st.lists(st.integers(0, p - 1), max_size=max_degree + 1))
    f = Poly.from_coeffs(ctx, coeffs)
    if nonzero and not f:
        f = Poly.one(ctx)
    return f


@st.composite
def ratfuncs(draw, p=None, max_degree=6):
    """Nonzero rational functions."""
    p = p or draw(st.sampled_from(PRIMES))
    num = draw(polys(p=p, max_degree=max_degree, nonzero=True))
    den = draw(polys(p=p, max_degree=max_degree, nonzero=True))
    return RatFunc(num, den)


@st.composite
def fq_elems(draw, p, k=1):
    ctx = get_ctx(p, k)
    return draw(st.integers(0, ctx.q - 1))
