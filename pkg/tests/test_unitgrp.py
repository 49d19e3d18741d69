import pytest
from hypothesis import given

from funcfield import BivarSym, parse_ratfunc
from gf import get_ctx
from misctypes import BudgetExceeded, UnsupportedAmbient
from strategies import ratfuncs
from unitgrp import (brute_force_xy1, brute_force_xyz1, build_group,
                     ess_bound_log10, lemma_3_2_delta_set, lemma_C1,
                     lemma_C1_instances, pth_power_compose,
                     pth_power_decompose, solve_xy1)


def group_of(ctx, *texts):
    return build_group([parse_ratfunc(ctx, t) for t in texts])


def as_text(pairs):
    return {(str(x), str(y)) for x, y in pairs}


def found_in_box(families, box):
    return as_text(pair for f in families for pair in f.members_in_box(box))


@pytest.mark.parametrize('p,gens', [
    (2, ['x', '1-x']),
    (3, ['x', '1-x']),
    (3, ['-1', 'x', '1-x']),
    (7, ['x']),
    ])
def test_solve_matches_brute_force(p, gens):
    group = group_of(get_ctx(p), *gens)
    families = solve_xy1(group)
    assert len(families) <= p ** (2 * group.rank) + len(group.torsion())
    box = 6
    assert found_in_box(families, box) == as_text(brute_force_xy1(group, box))


def test_anharmonic_families_f2(F2):
    group = group_of(F2, 'x', '1+x')
    families = solve_xy1(group)
    assert len(families) == 6
    roots = {str(f.base_pair[0]) for f in families}
    assert roots == {'x', 'x+1', '1/x', '1/(x+1)', '(x+1)/x', 'x/(x+1)'}
    for f in families:
        x, y = f.member(2)
        assert x.value() + y.value() == 1


def test_torsion_family(F3):
    group = group_of(F3, '-1', 'x', '1-x')
    families = solve_xy1(group)
    torsion = [f for f in families if f.torsion]
    assert len(torsion) == 1
    x0, y0 = torsion[0].base_pair
    assert (str(x0), str(y0)) == ('2', '2')


def test_group_membership(F3):
    group = group_of(F3, 'x', '1-x')
    assert group.rank == 2
    assert group.torsion() == [1]
    assert group.contains(parse_ratfunc(F3, 'x-1')) is not None
    assert group.contains(parse_ratfunc(F3, 'x^2/(1-x)')) is not None
    assert group.contains(parse_ratfunc(F3, '-1')) is None
    assert group.contains(parse_ratfunc(F3, 'x+1')) is None


def test_radical(F2):
    group = group_of(F2, 'x^2')
    x = parse_ratfunc(F2, 'x')
    assert group.contains(x) is None
    assert group.in_radical(x) is not None
    assert group.radical_index() == 2


def test_group_errors(F2, sym7):
    with pytest.raises(ValueError):
        build_group([])
    with pytest.raises(ValueError):
        group_of(F2, '0')
    with pytest.raises(UnsupportedAmbient):
        build_group([sym7[0]])


def test_three_term_solutions(F2):
    group = group_of(F2, 'x', '1+x')
    for x, y, z in brute_force_xyz1(group, 1):
        assert x.value() + y.value() + z.value() == 1
        assert x.value() + y.value()
    with pytest.raises(BudgetExceeded):
        brute_force_xyz1(group, 40)


@given(ratfuncs(p=3))
def test_pth_power_decompose(a):
    coords = pth_power_decompose(a)
    assert len(coords) == 3
    assert pth_power_compose(coords) == a


def test_pth_power_decompose_bivar(F7):
    a = BivarSym.parse(F7, 'x^8*y + 3*x^2 + y^7')
    coords = pth_power_decompose(a)
    assert set(coords) == {(1, 1), (2, 0), (0, 0)}
    assert pth_power_compose(coords) == a


@pytest.mark.parametrize('e,p', [((1, 1), 2), ((1, -1), 3), ((3, 1), 2),
                                 ((1, 1, 1), 2)])
def test_lemma_C1(e, p):
    C = lemma_C1(e, p)
    instances = lemma_C1_instances(e, p, 4)
    assert instances
    for u in instances:
        assert all(ui + C >= 0 for ui in u)


def test_lemma_C1_errors():
    with pytest.raises(ValueError):
        lemma_C1([], 2)
    assert lemma_C1([1, 0], 2) == 0
    assert lemma_C1([12], 2) == 2


def test_delta_set():
    assert lemma_3_2_delta_set(2, 1, 3, 6) == {-3, 0, 3}
    assert lemma_3_2_delta_set(2, 1, 3, 5) == lemma_3_2_delta_set(2, 1, 3, 6)
    with pytest.raises(ValueError):
        lemma_3_2_delta_set(2, 1, 1, 3)
    with pytest.raises(ValueError):
        lemma_3_2_delta_set(2, 2, 3, 3)


def test_ess_bound():
    small = ess_bound_log10(1, 1)
    assert small > 0
    assert ess_bound_log10(2, 1) > small
    assert ess_bound_log10(1, 2) > small
