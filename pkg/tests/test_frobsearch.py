import pytest
import sympy

from frobsearch import (FrobPattern, MSearchResult, addendum_predicates,
                        bound_calculator, classify_degenerate, compute_ef,
                        compute_periods, enumerate_M, fit_patterns,
                        generate_points, minimal_unit_pair, quotient_profile)
from funcfield import parse_ratfunc
from gf import get_ctx
from misctypes import HypothesisError, PatternKind
from tower import Tower


def synthetic(points, box, p):
    return MSearchResult(box, p, sorted(points), {})


def test_enumerate_sqrt_x(sqrt_x_tower):
    y = sqrt_x_tower.gen('y')
    result = enumerate_M(y, y, 4, 4)
    assert set(result.pairs) == {(1, 1), (2, 2), (3, 3), (4, 4), (2, 4),
                                 (4, 2)}
    assert result.closure_violations == []
    assert result.degenerate_outside == []
    assert result.flags[(3, 3)] == dict(inA=True, inB=True, inC=False)
    assert not any(result.flags[(2, 4)].values())
    assert (2, 4) in result
    assert result.witnesses == {(2, 4): None, (4, 2): None}


def test_enumerate_without_prefilter(sqrt_x_tower):
    y = sqrt_x_tower.gen('y')
    a = enumerate_M(y, y, 3, 3)
    b = enumerate_M(y, y, 3, 3, prefilter=False)
    assert a.pairs == b.pairs
    assert b.prefiltered == 0


def test_enumerate_example_b(sym7):
    s, t = sym7
    result = enumerate_M(s, t, 8, 8)
    assert {(1, 1), (2, 2), (7, 7), (8, 8)} <= set(result.pairs)
    assert result.closure_violations == []
    assert result.degenerate_outside == []
    assert result.witnesses[(1, 1)] == 'sigma'
    assert result.witnesses[(8, 8)] == 'sigma'
    assert result.as_json()['witnesses']['8,8'] == 'sigma'


def test_classify_degenerate(sym7, sqrt_x_tower):
    s, t = sym7
    assert classify_degenerate(s, t, 14, 14) == dict(inA=False, inB=False,
                                                     inC=False)
    y = sqrt_x_tower.gen('y')
    assert classify_degenerate(y, y, 2, 2)['inA']
    assert classify_degenerate(y, y.inverse(), 1, 1)['inC']


def test_fit_f1():
    points = generate_points(PatternKind.F1, 2, (3, 5), (32, 32))
    assert points == {(3, 5), (6, 10), (12, 20)}
    patterns = fit_patterns(synthetic(points, (32, 32), 2))
    assert [str(x) for x in patterns] == ['F1(2;3,5)']


def test_fit_doubly_frobenius():
    points = generate_points(PatternKind.F, 7, (1, 1, 1, 1), (60, 60))
    assert points == {(2, 2), (8, 8), (14, 14), (50, 50), (56, 56)}
    result = synthetic(points, (60, 60), 7)
    patterns = fit_patterns(result)
    assert [str(x) for x in patterns] == ['F(7;1,1,1,1)']
    assert patterns[0].validate(result)


def test_fit_example_b_search(sym7):
    s, t = sym7
    result = enumerate_M(s, t, 16, 16)
    assert result.closure_violations == []
    pattern = FrobPattern.build(PatternKind.F, 7, (1, 1, 1, 1), (16, 16))
    assert pattern.points == {(2, 2), (8, 8), (14, 14)}
    assert pattern.validate(result)
    covered = set()
    for pat in fit_patterns(result):
        assert pat.validate(result)
        covered |= pat.points
    assert covered == set(result.pairs)


def test_fit_residual_is_finite():
    result = synthetic({(1, 3), (5, 2)}, (8, 8), 2)
    patterns = fit_patterns(result)
    assert len(patterns) == 1
    assert patterns[0].kind == PatternKind.finite
    assert str(patterns[0]) == 'finite((1, 3),(5, 2))'
    assert fit_patterns(synthetic(set(), (8, 8), 2)) == []


def test_fit_covers_everything():
    points = {(m, m) for m in range(1, 9)} | {(3, 5), (6, 10)}
    result = synthetic(points, (10, 10), 2)
    covered = set()
    for pat in fit_patterns(result):
        assert pat.validate(result)
        covered |= pat.points
    assert covered == points


def test_pattern_validate_rejects():
    result = synthetic({(3, 5)}, (32, 32), 2)
    pat = FrobPattern.build(PatternKind.F1, 2, (3, 5), (32, 32))
    assert not pat.validate(result)


def test_quotient_profile():
    result = synthetic({(1, 1), (2, 2), (4, 4), (3, 5)}, (8, 8), 2)
    profile = quotient_profile(result)
    assert profile[0] == dict(ratio='3/5', members=[[3, 5]],
                              p_power_steps=True)
    assert profile[1]['ratio'] == '1'
    assert profile[1]['p_power_steps']


def test_compute_ef(sqrt_x_tower, sym7):
    y = sqrt_x_tower.gen('y')
    res = compute_ef(y, 6)
    assert (res.e, res.status) == (2, 'addendum')
    s, t = sym7
    periods = compute_periods(s, t, 8)
    assert periods.f.e == 1 and periods.f.coprime
    assert periods.verified


def scalars(tower, *texts):
    return [tower.parse(x) for x in texts]


def test_addendum_progression(a1_tower):
    s, t = scalars(a1_tower, 'x', 'x^2')
    report = addendum_predicates(s, t)
    assert (report['e'], report['f']) == (1, 1)
    assert report['minimal_pair'] == [2, 1]
    assert report['verdict'] == 'progression'


def test_addendum_empty(a1_tower):
    s, t = scalars(a1_tower, 'x', 'x+1')
    report = addendum_predicates(s, t)
    assert report['minimal_pair'] is None
    assert report['verdict'] == 'empty'
    s, t = scalars(a1_tower, '1', 'x')
    assert addendum_predicates(s, t)['verdict'] == 'empty'


def test_addendum_one_sided(sqrt_x_tower):
    y = sqrt_x_tower.gen('y')
    report = addendum_predicates(y, y + 1, bound=6)
    assert (report['e'], report['f']) == (2, None)
    assert report['verdict'] == 'frobenius-union'
    const = Tower.build(get_ctx(3), [dict(label='w', poly='w^2 - 2')])
    w = const.gen('w')
    report = addendum_predicates(w, w + const.parse('x'), bound=6)
    assert report['s_unit']
    assert report['verdict'] == 'product'


def test_addendum_hypothesis(eta_tower):
    s = eta_tower.gen('s')
    with pytest.raises(HypothesisError):
        addendum_predicates(s, s + 1, bound=3)


def test_minimal_unit_pair(F2):
    R = lambda t: parse_ratfunc(F2, t)      # noqa: E731
    assert minimal_unit_pair(R('x^2*(x+1)^4'), R('x^3*(x+1)^6')) == (3, 2)
    assert minimal_unit_pair(R('x*(x+1)'), R('x*(x+1)^2')) is None
    assert minimal_unit_pair(R('x'), R('1/x')) is None


def test_bounds_terms():
    out = bound_calculator(3, 2, 4, 1)
    expected = sympy.N(729 * sympy.log(4) / sympy.log(10), 40)
    assert abs(out['term1'] - expected) < 1e-25
    assert out['total'] >= out['term2']
    dominant = sympy.N(27 * sympy.Integer(18) ** 10 / sympy.log(10), 40)
    assert abs(bound_calculator(3, 2, 2, 1)['total'] / dominant - 1) < 1e-6
    with pytest.raises(ValueError):
        bound_calculator(1, 2, 2, 1)


def test_bounds_monotone():
    grid = [(d, q, S) for d in (2, 3) for q in (2, 4) for S in (1, 2)]
    totals = {k: bound_calculator(k[0], 2, k[1], k[2])['total']
              for k in grid}
    for d, q, S in grid:
        if d < 3:
            assert totals[(d, q, S)] <= totals[(d + 1, q, S)]
        if q < 4:
            assert totals[(d, q, S)] <= totals[(d, 2 * q, S)]
        if S < 2:
            assert totals[(d, q, S)] <= totals[(d, q, S + 1)]


def test_bounds_refined_min():
    d, q_K = 2, 2
    out = bound_calculator(d, 2, q_K, 1, q_L=q_K ** (d ** 3) * 4)
    expected = sympy.N(d ** 6 * sympy.log(q_K) / sympy.log(10), 40)
    assert abs(out['refined_term1'] - expected) < 1e-25
    assert 'refined_total' in out
