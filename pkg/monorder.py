"""Monogenic orders O[s] over O = F_q[x] or O_{K,T}."""

import dataclasses
import logging
from collections import namedtuple

import linalg
from funcfield import BivarSym, is_T_integer, is_T_unit
from misctypes import NotIntegralError
from tower import (AlgElem, det_over_k, discriminant, minimal_polynomial,
                   power_matrix)

log = logging.getLogger(__name__)

DEFAULT_MAX_E = 8

EQUAL = 'equal'
NOT_IN_FIELD = 'not-in-field'
NOT_CONTAINED = 'not-contained'
DEGREE_MISMATCH = 'degree-mismatch'
INDEX_NOT_UNIT = 'index-not-unit'
NOT_INTEGRAL = 'not-integral'


def in_ring(c, T=None):
    """Whether the K-element c lies in F_q[x] (T None) or in O_{K,T}."""
    if T is None:
        return c.is_poly()
    return is_T_integer(c, T)


def is_ring_unit(c, T=None):
    if not c:
        return False
    if T is None:
        return c.is_constant()
    return is_T_unit(c, T)


@dataclasses.dataclass(frozen=True)
class EqualityVerdict:
    """Outcome of an O[t] = O[s] test; truthy iff the orders are equal."""
    equal: bool
    reason: str
    detail: str = ''

    def __bool__(self):
        return self.equal

    def __str__(self):
        return self.reason if not self.detail else \
            f'{self.reason} ({self.detail})'

    def as_json(self):
        return dict(equal=self.equal, reason=self.reason, detail=self.detail)


GeneratorRelation = namedtuple('GeneratorRelation',
                               ['a', 'b', 'q', 'e', 'ratio', 'unit'])


class MonOrder():
    """The order O[s] for s integral over O, kept as a solver over the
    power basis 1, s, ..., s^(d-1).
    """
    def __init__(self, s, T=None):
        self.s = s
        self.T = T
        self.tower = s.tower
        g = minimal_polynomial(s)
        self.minpoly = g.poly
        self.degree = g.degree
        bad = [c for c in g.poly.coeffs if not in_ring(c, T)]
        if bad:
            log.error('Generator %s is not integral: coefficient %s', s,
                      bad[0])
            raise NotIntegralError(f'Minimal polynomial of {s} has '
                                   f'coefficient {bad[0]} outside the ring')
        self.powers = power_matrix(s, self.degree)
        t = self.tower
        self.solver = linalg.Solver(self.powers, t.zero_k, t.one_k)
        log.debug('Built order of degree %d for %s', self.degree, s)

    def express(self, t):
        """Coordinates of t in the power basis of s, or None."""
        return self.solver.solve(t.coords)

    def __contains__(self, t):
        return in_order(t, self)

    def discriminant(self):
        return discriminant(self.s)

    def __str__(self):
        return f'O[{self.s}]'


def express_in_power_basis(t, order):
    return order.express(t)


def in_order(t, order):
    """Whether t lies in O[s] = O + Os + ... + Os^(d-1)."""
    if isinstance(order, SymMonOrder):
        return order.contains(t)
    coords = order.express(t)
    if coords is None:
        return False
    return all(in_ring(c, order.T) for c in coords)


def in_order_cramer(t, order):
    """Membership by Cramer's rule on a nonsingular d x d minor.

    Independent of the elimination solver; used to cross-check failures.
    """
    tower = order.tower
    d = order.degree
    rows = [list(r) for r in zip(*order.powers)]
    basis = linalg.IncrementalBasis(tower.zero_k, tower.one_k)
    chosen = [i for i, row in enumerate(rows) if basis.add(row) is None]
    chosen = chosen[:d]
    det = det_over_k([rows[i] for i in chosen], tower.ctx)
    coeffs = []
    for j in range(d):
        sub = [[t.coords[i] if k == j else rows[i][k] for k in range(d)]
               for i in chosen]
        coeffs.append(det_over_k(sub, tower.ctx) / det)
    acc = tower.zero
    for c, col in zip(coeffs, order.powers):
        if c:
            acc = acc + AlgElem(tower, col).scale(c)
    if acc != t:
        return False
    return all(in_ring(c, order.T) for c in coeffs)


def make_order(s, T=None):
    if isinstance(s, BivarSym):
        return SymMonOrder(s)
    return MonOrder(s, T)


def orders_equal(t, order):
    """Decide O[t] = O[s] by containment and the index of O[t] in O[s]."""
    if isinstance(order, SymMonOrder):
        return order.equal(t)
    coords = order.express(t)
    if coords is None:
        return EqualityVerdict(False, NOT_IN_FIELD)
    g = minimal_polynomial(t)
    bad = [c for c in g.poly.coeffs if not in_ring(c, order.T)]
    if bad:
        return EqualityVerdict(False, NOT_INTEGRAL,
                               f'coefficient {bad[0]}')
    if g.degree != order.degree:
        return EqualityVerdict(False, DEGREE_MISMATCH,
                               f'{g.degree} != {order.degree}')
    if not all(in_ring(c, order.T) for c in coords):
        return EqualityVerdict(False, NOT_CONTAINED)
    rows = []
    power = t.tower.one
    for _ in range(order.degree):
        rows.append(order.express(power))
        power = power * t
    index = det_over_k(rows, t.tower.ctx)
    if not is_ring_unit(index, order.T):
        return EqualityVerdict(False, INDEX_NOT_UNIT, f'index {index}')
    return EqualityVerdict(True, EQUAL)


def disc_form_predicate(t, T):
    """t integral over O_{K,T} with discriminant a T-unit."""
    g = minimal_polynomial(t)
    if g.degree < 2:
        raise ValueError('Discriminant form needs degree at least 2')
    if not all(is_T_integer(c, T) for c in g.poly.coeffs):
        return False
    return is_T_unit(discriminant(t), T)


def disc_transform(a, q, D, d):
    """Discriminant of a*t^q + b given D = disc(t) and d = [K(t):K]."""
    return a ** (d * (d - 1)) * D ** q


def fit_generator_relation(t, ti, max_e=DEFAULT_MAX_E, T=None):
    """Find t = a*ti^q + b with a, b in K and q = p^e, smallest e first."""
    p = t.tower.ctx.p
    u = ti
    for e in range(max_e + 1):
        if e:
            u = u.frobenius()
        a = None
        ok = True
        for tk, uk in zip(t.coords[1:], u.coords[1:]):
            if not uk:
                if tk:
                    ok = False
                    break
                continue
            c = tk / uk
            if a is None:
                a = c
            elif c != a:
                ok = False
                break
        if not ok or not a:
            continue
        b = t.coords[0] - a * u.coords[0]
        ratio = discriminant(t) / discriminant(ti)
        rel = GeneratorRelation(a, b, p ** e, e, ratio,
                                is_ring_unit(ratio, T))
        log.debug('Generator relation at e=%d: a=%s b=%s', e, a, b)
        return rel
    log.warning('No generator relation up to q=%s', p ** max_e)
    return None


class SymMonOrder():
    """O[s] with O = F_q[x+y, xy] inside F_q[x, y], s not symmetric."""
    degree = 2
    T = None

    def __init__(self, s):
        if s.is_symmetric():
            raise ValueError(f'Generator {s} is symmetric')
        self.s = s
        self.ctx = s.ctx
        self.delta = s - s.sigma()

    def express(self, t):
        """(A, B) with t = A + B*s when B is a polynomial, else None."""
        B = (t - t.sigma()).divexact(self.delta)
        if B is None:
            return None
        return t - B * self.s, B

    def contains(self, t):
        pair = self.express(t)
        if pair is None:
            return False
        A, B = pair
        return A.is_symmetric() and B.is_symmetric()

    __contains__ = contains

    def equal(self, t):
        if t.is_symmetric():
            return EqualityVerdict(False, DEGREE_MISMATCH, '1 != 2')
        d = t - t.sigma()
        key, lead = self.delta.leading()
        c = d.terms.get(key, 0)
        if not c or d != self.delta.scale(self.ctx.div(c, lead)):
            if self.contains(t):
                return EqualityVerdict(False, INDEX_NOT_UNIT)
            return EqualityVerdict(False, NOT_CONTAINED)
        if not (t - self.s.scale(self.ctx.div(c, lead))).is_symmetric():
            return EqualityVerdict(False, NOT_CONTAINED)
        return EqualityVerdict(True, EQUAL)

    def discriminant(self):
        return self.delta * self.delta

    def __str__(self):
        return f'O[{self.s}]'
