"""Search for the pairs (m, n) with O[s^m] = O[t^n].

The grid search is exact inside its box.  Everything fitted to its output
(Frobenius patterns, progressions, quotient profiles) describes the observed
box only and says nothing about pairs outside it.
"""

import dataclasses
import itertools
import logging
import math
from fractions import Fraction

import sympy

from funcfield import BivarSym, RatFunc
from misctypes import HypothesisError, PatternKind
from monorder import (EqualityVerdict, is_ring_unit, make_order,
                      orders_equal)
from tower import backend_of

log = logging.getLogger(__name__)

DEFAULT_EF_BOUND = 24
PATTERN_CANDIDATE_LIMIT = 400


@dataclasses.dataclass
class MSearchResult:
    """Pairs found in the box [1, M_max] x [1, N_max]."""
    box: tuple
    p: int
    pairs: list
    flags: dict
    witnesses: dict = dataclasses.field(default_factory=dict)
    closure_violations: list = dataclasses.field(default_factory=list)
    degenerate_outside: list = dataclasses.field(default_factory=list)
    prefiltered: int = 0

    def __contains__(self, pair):
        return pair in self._pairset

    @property
    def _pairset(self):
        return set(self.pairs)

    def as_json(self):
        return dict(box=list(self.box), pairs=[list(x) for x in self.pairs],
                    flags={f'{m},{n}': v for (m, n), v in
                           sorted(self.flags.items()) if any(v.values())},
                    witnesses={f'{m},{n}': v for (m, n), v in
                               sorted(self.witnesses.items())},
                    closure_violations=[list(x) for x in
                                        self.closure_violations],
                    degenerate_outside=[list(x) for x in
                                        self.degenerate_outside],
                    prefiltered=self.prefiltered)


def classify_degenerate(s, t, m, n, powers=None):
    """Flags inA (s^m/t^n unit), inB (s^m/sigma(t^n) unit), inC (s^m t^n
    unit) for the pair (m, n).
    """
    backend = backend_of(s)
    u = powers[0][m] if powers else s ** m
    v = powers[1][n] if powers else t ** n
    in_a = backend.constant_ratio(u, v) is not None
    in_c = backend.is_base_unit(u * v)
    w = backend.quadratic_conjugate(v)
    in_b = w is not None and backend.constant_ratio(u, w) is not None
    return dict(inA=in_a, inB=in_b, inC=in_c)


def nondegenerate_witness(s, t, m, n, powers=None):
    """The automorphism sigma for which (s^m - sigma(s^m)) / (t^n - sigma(t^n))
    is defined, or None.

    Only the nontrivial automorphism of a quadratic K(s^m) = K(t^n) is
    available without declared maps; it is reported as 'sigma'.
    """
    backend = backend_of(s)
    u = powers[0][m] if powers else s ** m
    v = powers[1][n] if powers else t ** n
    su, sv = backend.quadratic_conjugate(u), backend.quadratic_conjugate(v)
    if su is None or sv is None or su == u or sv == v:
        return None
    return 'sigma'


class _PowerCache(dict):
    def __init__(self, base, size):
        super().__init__()
        value = base
        for k in range(1, size + 1):
            self[k] = value
            value = value * base


def _power_orders(powers, backend):
    """(degree, order or None, discriminant or None) per exponent."""
    out = {}
    for k, u in powers.items():
        d = backend.degree_of(u)
        if d == 1:
            out[k] = (1, None, None)
            continue
        order = make_order(u)
        out[k] = (d, order, order.discriminant())
        log.debug('Order of power %d built, degree %d', k, d)
    return out


def _disc_unit_ratio(backend, d1, d2):
    if isinstance(d1, RatFunc):
        return is_ring_unit(d1 / d2)
    return backend.constant_ratio(d1, d2) is not None


def enumerate_M(s, t, M_max, N_max, prefilter=True):
    """Exact membership of every (m, n) in the box."""
    backend = backend_of(s)
    make_order(s)
    make_order(t)
    p = backend.ctx.p
    spow = _PowerCache(s, M_max)
    tpow = _PowerCache(t, N_max)
    sinfo = _power_orders(spow, backend)
    tinfo = _power_orders(tpow, backend)
    pairs, flags = [], {}
    skipped = 0
    for m, n in itertools.product(range(1, M_max + 1), range(1, N_max + 1)):
        ds, order, disc_s = sinfo[m]
        dt, _, disc_t = tinfo[n]
        flags[(m, n)] = classify_degenerate(s, t, m, n, (spow, tpow))
        if ds != dt:
            verdict = EqualityVerdict(False, 'degree-mismatch')
        elif ds == 1:
            ok = (backend.is_base_integral(spow[m])
                  and backend.is_base_integral(tpow[n]))
            verdict = EqualityVerdict(ok, 'equal' if ok else 'not-integral')
        elif prefilter and not _disc_unit_ratio(backend, disc_s, disc_t):
            skipped += 1
            continue
        else:
            verdict = orders_equal(tpow[n], order)
        log.debug('Cell (%d, %d): %s', m, n, verdict)
        if verdict:
            pairs.append((m, n))
    result = MSearchResult((M_max, N_max), p, pairs, flags,
                           prefiltered=skipped)
    result.witnesses = {
        cell: nondegenerate_witness(s, t, *cell, (spow, tpow))
        for cell in pairs if not any(flags[cell].values())}
    found = set(pairs)
    result.closure_violations = [
        (m, n) for m, n in pairs
        if p * m <= M_max and p * n <= N_max and (p * m, p * n) not in found]
    result.degenerate_outside = [
        cell for cell, f in sorted(flags.items())
        if any(f.values()) and cell not in found]
    if result.closure_violations:
        log.warning('Closure violations: %s', result.closure_violations)
    return result


# Subfield periods.

@dataclasses.dataclass(frozen=True)
class PeriodResult:
    """The least e with K(s^e) inside every K(s^n), n <= bound."""
    e: int
    status: str
    degrees: tuple
    coprime: bool = True

    def as_json(self):
        return dict(e=self.e, status=self.status, degrees=list(self.degrees),
                    coprime=self.coprime)


@dataclasses.dataclass(frozen=True)
class PeriodPair:
    e: PeriodResult
    f: PeriodResult

    @property
    def verified(self):
        return self.e.status == self.f.status == 'verified'

    def as_json(self):
        return dict(e=self.e, f=self.f)


def compute_ef(s, search_bound=DEFAULT_EF_BOUND):
    backend = backend_of(s)
    p = backend.ctx.p
    powers = _PowerCache(s, search_bound)
    degrees = tuple(backend.degree_of(powers[n])
                    for n in range(1, search_bound + 1))
    if 1 in degrees:
        first = degrees.index(1) + 1
        log.info('Power s^%d lies in K', first)
        return PeriodResult(first, 'addendum', degrees)
    least = min(degrees)
    for e in range(1, search_bound + 1):
        if degrees[e - 1] != least:
            continue
        if all(backend.subfield_contains(powers[n], powers[e])
               for n in range(1, search_bound + 1)):
            coprime = math.gcd(e, p) == 1
            if not coprime:
                log.warning('Period %d is divisible by p=%d', e, p)
            return PeriodResult(e, 'verified', degrees, coprime)
    log.warning('No period found up to %d', search_bound)
    return PeriodResult(0, 'unverified', degrees)


def compute_periods(s, t, search_bound=DEFAULT_EF_BOUND):
    return PeriodPair(compute_ef(s, search_bound), compute_ef(t, search_bound))


# Pattern fitting.

def _p_powers(p, limit):
    q = p
    while q <= limit:
        yield q
        q *= p


@dataclasses.dataclass(frozen=True)
class FrobPattern:
    """A set of pairs of one of the Frobenius kinds, cut to a box."""
    kind: PatternKind
    q: int
    params: tuple
    points: frozenset

    @classmethod
    def build(cls, kind, q, params, box):
        return cls(kind, q, tuple(params),
                   frozenset(generate_points(kind, q, params, box)))

    def validate(self, result):
        return self.points == frozenset(
            generate_points(self.kind, self.q, self.params, result.box)) \
            and self.points <= set(result.pairs)

    def __str__(self):
        params = ','.join(str(x) for x in self.params)
        if self.kind in (PatternKind.A, PatternKind.finite):
            return f'{self.kind.value}({params})'
        return f'{self.kind.value}({self.q};{params})'

    def as_json(self):
        return dict(kind=self.kind, q=self.q,
                    params=[str(x) for x in self.params],
                    points=[list(x) for x in sorted(self.points)],
                    text=str(self))


def _exponent_limit(q, bound):
    k = 0
    while q ** k <= bound:
        k += 1
    return k + 1


def generate_points(kind, q, params, box):
    """The pattern's pairs inside [1, M] x [1, N]."""
    M, N = box
    out = set()

    def keep(a, b):
        if isinstance(a, Fraction):
            if a.denominator != 1 or b.denominator != 1:
                return
            a, b = int(a), int(b)
        if 1 <= a <= M and 1 <= b <= N:
            out.add((a, b))

    if kind == PatternKind.finite:
        for a, b in params:
            keep(a, b)
    elif kind == PatternKind.A:
        a, b, alpha, beta = params
        k = 0
        while a + k * alpha <= M and b + k * beta <= N:
            keep(a + k * alpha, b + k * beta)
            k += 1
    elif kind == PatternKind.F1:
        a, b = params
        k = 1
        while a * k <= M and b * k <= N:
            keep(a * k, b * k)
            k *= q
    elif kind == PatternKind.F2:
        a, b = params
        for i in _powers_upto(q, M // a):
            for j in _powers_upto(q, N // b):
                keep(a * i, b * j)
    else:
        c1, c2, c3, c4 = params
        scale = max(M, N) * 2 * max(x.denominator for x in params) \
            + sum(abs(x) for x in params)
        L = _exponent_limit(q, scale)
        for i, j in itertools.product(range(L), repeat=2):
            qi, qj = q ** i, q ** j
            keep(c1 * qi + c2 * qj, c3 * qi + c4 * qj)
    return out


def _powers_upto(q, limit):
    k = 1
    while k <= limit:
        yield k
        k *= q


def _candidates(pairs, p, box):
    M, N = box
    limit = max(M, N)
    pset = set(pairs)
    ordered = sorted(pairs)[:PATTERN_CANDIDATE_LIMIT]
    for a, b in ordered:
        for q in _p_powers(p, limit):
            yield PatternKind.F1, q, (a, b)
            yield PatternKind.F2, q, (a, b)
    for (a0, b0), (a1, b1) in itertools.permutations(ordered, 2):
        if a1 < a0 or b1 < b0:
            continue
        for q in _p_powers(p, limit):
            c1 = Fraction(a1 - a0, q - 1)
            c3 = Fraction(b1 - b0, q - 1)
            yield PatternKind.F, q, (c1, a0 - c1, c3, b0 - c3)
        if (a0 - (a1 - a0), b0 - (b1 - b0)) not in pset:
            yield PatternKind.A, 1, (a0, b0, a1 - a0, b1 - b0)


def fit_patterns(result, p=None):
    """Greedy cover of the found pairs by validated patterns.

    Each round takes the candidate covering the most uncovered pairs; ties
    go to the simpler kind.  Pairs no pattern explains are reported as a
    single finite pattern.
    """
    p = p or result.p
    pairs = set(result.pairs)
    if not pairs:
        return []
    seen = {}
    for kind, q, params in _candidates(result.pairs, p, result.box):
        pat = FrobPattern.build(kind, q, params, result.box)
        if len(pat.points) < 2 or not pat.points <= pairs:
            continue
        if kind == PatternKind.F2 and all(
                a * params[1] == b * params[0] for a, b in pat.points):
            continue
        key = pat.points
        if key not in seen or (kind, q) < (seen[key].kind, seen[key].q):
            seen[key] = pat
    log.debug('%d distinct pattern candidates', len(seen))
    chosen = []
    uncovered = set(pairs)
    while uncovered:
        best = None
        for pat in seen.values():
            gain = len(pat.points & uncovered)
            if gain < 2:
                continue
            rank = (-gain, pat.kind, pat.q, sorted(pat.points))
            if best is None or rank < best[0]:
                best = (rank, pat)
        if best is None:
            break
        pat = best[1]
        chosen.append(pat)
        uncovered -= pat.points
        log.debug('Pattern %s covers %d pairs', pat, len(pat.points))
    if uncovered:
        rest = tuple(sorted(uncovered))
        chosen.append(FrobPattern(PatternKind.finite, 1, rest,
                                  frozenset(rest)))
    for pat in chosen:
        assert pat.validate(result), pat
    return chosen


def quotient_profile(result):
    """Found pairs grouped by the reduced ratio m/n."""
    p = result.p
    groups = {}
    for m, n in result.pairs:
        groups.setdefault(Fraction(m, n), []).append((m, n))
    out = []
    for ratio, members in sorted(groups.items()):
        m0 = members[0][0]
        p_power = all(_is_p_power(m // m0, p) and m % m0 == 0
                      for m, _ in members)
        out.append(dict(ratio=str(ratio), members=[list(x) for x in members],
                        p_power_steps=p_power))
    return out


def _is_p_power(n, p):
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


# Powers lying in K.

def _first_base_power(backend, u, bound):
    power = u
    for k in range(1, bound + 1):
        if backend.degree_of(power) == 1:
            return k, power
        power = power * u
    return None, None


def _finite_divisor(a):
    return {place: m for place, m in a.divisor().items()
            if not place.is_infinite}


def minimal_unit_pair(S, T, backend=None, bound=12):
    """Least (M, N) with S^M / T^N a unit of O, or None.

    S and T are nonzero non-units of O.  Over F_q[x] the answer comes from
    the finite divisors; otherwise pairs up to bound are tried in order of
    M + N.
    """
    if isinstance(S, RatFunc):
        ds, dt = _finite_divisor(S), _finite_divisor(T)
        if set(ds) != set(dt) or not ds:
            return None
        ratios = {Fraction(dt[k], ds[k]) for k in ds}
        if len(ratios) != 1:
            return None
        r = ratios.pop()
        return (r.numerator, r.denominator) if r > 0 else None
    for M, N in sorted(itertools.product(range(1, bound + 1), repeat=2),
                       key=lambda x: (x[0] + x[1], x)):
        if backend.constant_ratio(S ** M, T ** N) is not None:
            return M, N
    return None


def addendum_predicates(s, t, bound=DEFAULT_EF_BOUND):
    """Structure of M(O, s, t) when some power of s or t lies in K."""
    backend = backend_of(s)
    e, S = _first_base_power(backend, s, bound)
    f, T = _first_base_power(backend, t, bound)
    if e is None and f is None:
        log.error('No power of s or t up to %d lies in K', bound)
        raise HypothesisError('No power of s or t lies in K; use the grid '
                              'search instead')
    report = dict(e=e, f=f)
    for name, X in (('s', S), ('t', T)):
        report[f'{name}_unit'] = X is not None and backend.is_base_unit(X)
    if e is not None and f is not None:
        if report['s_unit'] and report['t_unit']:
            verdict = 'progression'
        elif report['s_unit'] or report['t_unit']:
            verdict = 'empty'
        else:
            if isinstance(S, BivarSym):
                pair = minimal_unit_pair(S, T, backend)
            else:
                pair = minimal_unit_pair(backend.base_element(S),
                                         backend.base_element(T))
            report['minimal_pair'] = list(pair) if pair else None
            verdict = 'progression' if pair else 'empty'
    else:
        unit = report['t_unit'] if f is not None else report['s_unit']
        verdict = 'product' if unit else 'frobenius-union'
    report['verdict'] = verdict
    log.info('Addendum verdict for e=%s f=%s: %s', e, f, verdict)
    return report


# Bounds.

LN10 = sympy.log(10)


def _log10(x):
    return sympy.log(x) / LN10


def _log10_sum(a, b, digits):
    hi, lo = (a, b) if a >= b else (b, a)
    return sympy.N(hi + _log10(1 + sympy.Integer(10) ** (lo - hi)), digits)


def bound_calculator(d, p, q_K, S_size, q_L=None, r=None, digits=40):
    """log10 of the bound on the number of equivalence classes of monogenic
    generators, and optionally of its refinement through q(L) and r.
    """
    if d < 2:
        raise ValueError('Bound needs degree d >= 2')
    d, p, q_K = sympy.Integer(d), sympy.Integer(p), sympy.Integer(q_K)
    S_size = sympy.Integer(S_size)
    big = sympy.Integer(18) ** 10 / LN10
    t1 = sympy.N(d ** 6 * _log10(q_K), digits)
    t2 = sympy.N(d ** 3 * (big + 3 * d ** 4 * S_size * _log10(p)
                           + _log10(sympy.log(q_K) / sympy.log(p))), digits)
    out = dict(term1=t1, term2=t2, total=_log10_sum(t1, t2, digits))
    if q_L is not None:
        r = r if r is not None else int(d ** 4 * S_size)
        q_L = sympy.Integer(q_L)
        lam = sympy.log(q_L) / sympy.log(p)
        first = sympy.Min(_log10(q_L), d ** 3 * _log10(q_K))
        u1 = sympy.N(d ** 3 * first, digits)
        u2 = sympy.N(d ** 3 * (big + 2 * r * _log10(p) + 8 * _log10(d)
                               + _log10(lam)), digits)
        out.update(refined_term1=u1, refined_term2=u2,
                   refined_total=_log10_sum(u1, u2, digits))
    return out
