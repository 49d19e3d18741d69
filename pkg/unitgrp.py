"""Finitely generated subgroups of F_q(x)^* and the unit equation x + y = 1.

A group G is stored over a coprime basis b_1, ..., b_r of squarefree monic
polynomials: every element of G is c * prod b_i^E_i with c in F_q^*, so G
sits inside F_q^* x Z^r.  The exponent lattice of G, its saturation (the
radical H of G) and the constants of G are all computed with integer
linear algebra.
"""

import dataclasses
import itertools
import logging
import math
from fractions import Fraction

import sympy

import linalg
from funcfield import BivarSym, Poly, RatFunc, gcd, squarefree_decomposition
from gf import FqElem
from misctypes import BudgetExceeded, UnsupportedAmbient

log = logging.getLogger(__name__)

MAX_RANK = 6
ENUMERATION_BUDGET = 10 ** 6


# p-th power decompositions.

def pth_power_decompose(a):
    """Coordinates c_m with a = sum_m c_m^p * m over the p-basis.

    For a in F_q(x) the p-basis is 1, x, ..., x^(p-1) and the result is a
    list indexed by the exponent; for a polynomial in x, y the basis is
    x^i y^j with i, j < p and the result is a dict keyed by (i, j).
    """
    if isinstance(a, BivarSym):
        return _pth_power_decompose_bivar(a)
    if isinstance(a, Poly):
        a = RatFunc(a)
    p = a.ctx.p
    den = a.den
    comps = (a.num * den ** (p - 1)).p_components()
    comps += [Poly.zero(a.ctx)] * (p - len(comps))
    return [RatFunc(c, den) for c in comps]


def _pth_power_decompose_bivar(a):
    ctx = a.ctx
    p = ctx.p
    parts = {}
    for (i, j), c in a.terms.items():
        key = (i % p, j % p)
        parts.setdefault(key, {})[(i // p, j // p)] = ctx.pth_root(c)
    return {key: BivarSym(ctx, terms) for key, terms in sorted(parts.items())}


def pth_power_compose(coords):
    """Inverse of pth_power_decompose."""
    if isinstance(coords, dict):
        acc = None
        for (i, j), c in coords.items():
            p = c.ctx.p
            mono = BivarSym(c.ctx, {(i, j): 1})
            term = c ** p * mono
            acc = term if acc is None else acc + term
        return acc
    p = coords[0].ctx.p
    x = RatFunc.x(coords[0].ctx)
    acc = RatFunc(Poly.zero(coords[0].ctx))
    for m, c in enumerate(coords):
        if c:
            acc = acc + c ** p * x ** m
    return acc


# Groups.

def coprime_basis(polys):
    """Pairwise coprime squarefree monic polynomials refining polys."""
    basis = []
    todo = []
    for f in polys:
        if not f.is_constant():
            todo.extend(g for g, _ in squarefree_decomposition(f))
    while todo:
        a = todo.pop()
        if a.is_constant():
            continue
        for i, b in enumerate(basis):
            g = gcd(a, b)
            if not g.is_one():
                basis.pop(i)
                todo.extend([g, a // g, b // g])
                break
        else:
            basis.append(a.monic())
    return sorted(basis, key=lambda f: f.sort_key())


@dataclasses.dataclass(frozen=True)
class GroupElem:
    """c * prod b_i^E_i over the coprime basis of a group."""
    group: object = dataclasses.field(compare=False, hash=False, repr=False)
    torsion: int
    exponents: tuple

    def value(self):
        g = self.group
        ctx = g.ctx
        num = Poly.const(ctx, FqElem(ctx, self.torsion))
        den = Poly.one(ctx)
        for b, e in zip(g.basis, self.exponents):
            if e > 0:
                num = num * b ** e
            elif e < 0:
                den = den * b ** (-e)
        return RatFunc(num, den)

    def __mul__(self, other):
        ctx = self.group.ctx
        return GroupElem(self.group, ctx.mul(self.torsion, other.torsion),
                         tuple(a + b for a, b in
                               zip(self.exponents, other.exponents)))

    def __pow__(self, n):
        ctx = self.group.ctx
        c = self.torsion if n >= 0 else ctx.inv(self.torsion)
        return GroupElem(self.group, ctx.pow(c, abs(n)),
                         tuple(n * e for e in self.exponents))

    def frobenius(self, e=1):
        return self ** (self.group.ctx.p ** e)

    @property
    def is_torsion(self):
        return not any(self.exponents)

    @property
    def height(self):
        return max((abs(e) for e in self.exponents), default=0)

    def __str__(self):
        return str(self.value())

    def as_json(self):
        return str(self)


class GroupCtx():
    """The subgroup of F_q(x)^* generated by the given elements."""
    def __init__(self, generators):
        generators = list(generators)
        if not generators:
            raise ValueError('A group needs at least one generator')
        gens = []
        for g in generators:
            if isinstance(g, BivarSym):
                raise UnsupportedAmbient('Groups are supported over F_q(x) '
                                         'only')
            if isinstance(g, Poly):
                g = RatFunc(g)
            if not isinstance(g, RatFunc):
                raise UnsupportedAmbient(f'Unsupported generator {g!r}')
            if not g:
                log.error('Zero generator in group')
                raise ValueError('Group generators must be nonzero')
            gens.append(g)
        self.ctx = gens[0].ctx
        self.generators = gens
        self.basis = coprime_basis([f for g in gens for f in (g.num, g.den)])
        self.r = len(self.basis)
        self.gen_elems = [self.factor(g) for g in gens]
        r, n = self.r, len(gens)
        self.lattice = linalg.IntLattice.spanned_by(
            r, [g.exponents for g in self.gen_elems])
        self._tracked = linalg.IntLattice.spanned_by(
            r + n, [list(g.exponents) + [int(i == j) for j in range(n)]
                    for i, g in enumerate(self.gen_elems)])
        self._build_torsion()
        self.radical = self.lattice.saturation()
        self.rank = self.lattice.rank
        log.debug('Group with basis %s, rank %d, torsion order %d',
                  [str(b) for b in self.basis], self.rank, self.torsion_order)

    def _build_torsion(self):
        ctx = self.ctx
        omega = ctx.primitive_root()
        self._dlog = {}
        value = 1
        for k in range(ctx.q - 1):
            self._dlog[value] = k
            value = ctx.mul(value, omega)
        self._omega = omega
        rows = [[g.exponents[i] for g in self.gen_elems]
                for i in range(self.r)]
        step = ctx.q - 1
        for w in linalg.integer_kernel(rows, len(self.gen_elems)):
            step = math.gcd(step, self._combo_log(w))
        self.torsion_step = step
        self.torsion_order = (ctx.q - 1) // step

    def _combo_log(self, w):
        return sum(wi * self._dlog[g.torsion]
                   for wi, g in zip(w, self.gen_elems))

    def torsion(self):
        """Raw elements of G intersected with F_q^*."""
        ctx = self.ctx
        base = ctx.pow(self._omega, self.torsion_step)
        out, value = [], 1
        for _ in range(self.torsion_order):
            out.append(value)
            value = ctx.mul(value, base)
        return sorted(out)

    def element(self, torsion, exponents):
        return GroupElem(self, torsion, tuple(exponents))

    @property
    def one(self):
        return self.element(1, (0,) * self.r)

    def factor(self, a):
        """a as c * prod b_i^E_i, or None if a is not of that form."""
        if isinstance(a, GroupElem):
            return a
        if isinstance(a, Poly):
            a = RatFunc(a)
        if not a:
            return None
        num, den = a.num, a.den
        exps = []
        for b in self.basis:
            e1 = num.valuation_at(b)
            e2 = den.valuation_at(b)
            if e1:
                num = num // b ** e1
            if e2:
                den = den // b ** e2
            exps.append(e1 - e2)
        if not num.is_constant() or not den.is_constant():
            return None
        c = self.ctx.div(num.lead, den.lead)
        return GroupElem(self, c, tuple(exps))

    def _combination(self, exponents):
        """w with sum w_g E_g = exponents, or None."""
        n = len(self.gen_elems)
        vec = list(exponents) + [0] * n
        for piv, row in zip(self._tracked.pivots, self._tracked.basis):
            if piv >= self.r:
                break
            b, a = vec[piv], row[piv]
            if b % a:
                return None
            q = b // a
            if q:
                vec = [v - q * x for v, x in zip(vec, row)]
        if any(vec[:self.r]):
            return None
        return [-v for v in vec[self.r:]]

    def contains(self, a):
        """The GroupElem of a if a lies in G, else None."""
        elem = self.factor(a)
        if elem is None:
            return None
        w = self._combination(elem.exponents)
        if w is None:
            return None
        diff = self._dlog[elem.torsion] - self._combo_log(w)
        if diff % self.torsion_step:
            return None
        return elem

    __contains__ = contains

    def in_radical(self, a):
        """The GroupElem of a if a lies in the radical H of G, else None."""
        elem = self.factor(a)
        if elem is None or elem.exponents not in self.radical:
            return None
        return elem

    def radical_index(self):
        """Index of the exponent lattice of G in that of H."""
        return self.lattice.index_in(self.radical)

    def coset_representatives(self):
        """Exponent combinations of the radical basis with digits < p."""
        p = self.ctx.p
        vecs = self.radical.basis
        reps = []
        for digits in itertools.product(range(p), repeat=len(vecs)):
            exps = [0] * self.r
            for a, v in zip(digits, vecs):
                if a:
                    exps = [e + a * x for e, x in zip(exps, v)]
            reps.append(self.element(1, exps))
        return reps

    def __str__(self):
        gens = ', '.join(str(g) for g in self.generators)
        return f'<{gens}>'

    def as_json(self):
        return dict(generators=[str(g) for g in self.generators],
                    basis=[str(b) for b in self.basis], rank=self.rank,
                    torsion=[self.ctx.format(c) for c in self.torsion()])


def build_group(generators):
    return GroupCtx(generators)


@dataclasses.dataclass(frozen=True)
class SolutionFamily:
    """The orbit (x0^(p^k), y0^(p^k)), k >= 0, of solutions in G.

    root_pair lies in the radical H and has a coordinate that is not a p-th
    power; base_pair = root_pair^(p^depth) is the first orbit member in G.
    """
    root_pair: tuple
    base_pair: tuple
    depth: int
    torsion: bool = False

    def member(self, k):
        x0, y0 = self.base_pair
        return x0.frobenius(k), y0.frobenius(k)

    def members_in_box(self, box):
        """Orbit members with exponent heights at most box."""
        out = []
        seen = set()
        k = 0
        while True:
            x, y = self.member(k)
            if max(x.height, y.height) > box or (x, y) in seen:
                return out
            seen.add((x, y))
            out.append((x, y))
            k += 1

    def __str__(self):
        x0, y0 = self.base_pair
        return f'({x0}, {y0}) ^ p^k, k>=0'

    def as_json(self):
        x0, y0 = self.base_pair
        r0, s0 = self.root_pair
        return dict(x0=str(x0), y0=str(y0), root=[str(r0), str(s0)],
                    depth=self.depth, torsion=self.torsion, text=str(self))


def _coset_solution(free, other):
    """(u, v) in K with u^p*free + v^p*other = 1, or None.

    free must not be a p-th power; then other = a^p + b^p*free determines
    a = 1/v and b = -u/v uniquely.
    """
    d = pth_power_decompose(free)
    c = pth_power_decompose(other)
    b = None
    for cm, dm in zip(c[1:], d[1:]):
        if dm:
            b = cm / dm
            break
    if b is None:
        return None
    if any(cm != b * dm for cm, dm in zip(c[1:], d[1:])):
        return None
    a = c[0] - b * d[0]
    if not a or not b:
        return None
    v = a.inverse()
    return -b * v, v


def solve_xy1(group, height_bound=None):
    """All solutions of x + y = 1 in G, as Frobenius orbit families."""
    if group.rank > MAX_RANK:
        raise BudgetExceeded(f'Rank {group.rank} exceeds {MAX_RANK}')
    ctx = group.ctx
    p = ctx.p
    if height_bound is None:
        height_bound = linalg.p_adic_order(group.radical_index(), p) + 1
    reps = group.coset_representatives()
    families = []
    for i, j in itertools.product(range(len(reps)), repeat=2):
        if i == 0 and j == 0:
            continue
        ei, ej = reps[i].value(), reps[j].value()
        if i:
            sol = _coset_solution(ei, ej)
            if sol is None:
                continue
            x1, y1 = sol
        else:
            sol = _coset_solution(ej, ei)
            if sol is None:
                continue
            y1, x1 = sol
        hx, hy = group.in_radical(x1), group.in_radical(y1)
        if hx is None or hy is None:
            continue
        root = (hx ** p * reps[i], hy ** p * reps[j])
        assert root[0].value() + root[1].value() == 1, (i, j)
        family = _descend(group, root, height_bound)
        if family is not None:
            families.append(family)
        else:
            log.debug('Radical solution %s, %s not in G up to height %d',
                      root[0], root[1], height_bound)
    families.extend(_torsion_families(group))
    families.sort(key=lambda f: (f.torsion, str(f.base_pair[0]),
                                 str(f.base_pair[1])))
    if len(families) > p ** (2 * group.rank) and group.rank:
        log.warning('Family count %d above p^(2r)', len(families))
    return families


def _descend(group, root, height_bound):
    x, y = root
    for n in range(height_bound + 1):
        if group.contains(x) is not None and group.contains(y) is not None:
            return SolutionFamily(root, (x, y), n)
        x, y = x.frobenius(), y.frobenius()
    return None


def _torsion_families(group):
    ctx = group.ctx
    tors = set(group.torsion())
    seen = set()
    out = []
    for g in sorted(tors):
        h = ctx.sub(1, g)
        if g in seen or h == 0 or h not in tors:
            continue
        orbit = []
        c = g
        while c not in orbit:
            orbit.append(c)
            c = ctx.frob(c)
        seen.update(orbit)
        zero = (0,) * group.r
        pair = (group.element(g, zero), group.element(h, zero))
        out.append(SolutionFamily(pair, pair, 0, torsion=True))
    return out


def _allowed_torsion(group, exponents):
    """Raw constants c with c * prod b^E in G, for E in the lattice."""
    w = group._combination(exponents)
    if w is None:
        return []
    base = group._combo_log(w)
    ctx = group.ctx
    omega = group._omega
    return sorted(ctx.pow(omega, (base + k * group.torsion_step)
                          % (ctx.q - 1))
                  for k in range(group.torsion_order))


def _box_elements(group, box):
    size = (2 * box + 1) ** group.r * group.torsion_order
    if size > ENUMERATION_BUDGET:
        raise BudgetExceeded(f'Enumeration of {size} elements')
    for exps in linalg.vectors_in_box(group.r, box):
        for c in _allowed_torsion(group, exps):
            yield group.element(c, exps)


def brute_force_xy1(group, exponent_box):
    """All (x, y) in G^2 with heights at most exponent_box and x + y = 1."""
    out = []
    for x in _box_elements(group, exponent_box):
        y = group.contains(1 - x.value())
        if y is not None and y.height <= exponent_box:
            out.append((x, y))
    return out


def brute_force_xyz1(group, exponent_box):
    """Non-degenerate (x, y, z) in G^3 with heights at most exponent_box
    and x + y + z = 1.
    """
    elems = list(_box_elements(group, exponent_box))
    if len(elems) ** 2 > ENUMERATION_BUDGET:
        raise BudgetExceeded(f'Enumeration of {len(elems) ** 2} pairs')
    values = [e.value() for e in elems]
    out = []
    for (x, xv), (y, yv) in itertools.product(zip(elems, values), repeat=2):
        if not xv + yv:
            continue
        zv = 1 - xv - yv
        if not zv or not xv + zv or not yv + zv:
            continue
        z = group.contains(zv)
        if z is not None and z.height <= exponent_box:
            out.append((x, y, z))
    return out


# Integer lemmas.

def _floor_log(n, p):
    c = 0
    while p ** (c + 1) <= n:
        c += 1
    return c


def lemma_C1(e, p):
    """A constant C with u_i + C >= 0 whenever sum e_i p^u_i is a nonzero
    integer without vanishing proper subsums.
    """
    e = list(e)
    if not e:
        raise ValueError('Empty coefficient list')
    if any(x == 0 for x in e):
        return 0
    if len(e) == 1:
        return linalg.p_adic_order(e[0], p)
    c2 = _floor_log(sum(abs(x) for x in e), p)
    return c2 + max(lemma_C1(e[:i] + e[i + 1:], p) for i in range(len(e)))


def _no_vanishing_subsum(terms):
    n = len(terms)
    for size in range(1, n):
        for sub in itertools.combinations(terms, size):
            if sum(sub) == 0:
                return False
    return True


def lemma_C1_instances(e, p, box):
    """Exponent tuples in [-box, box]^N meeting the hypotheses of lemma_C1."""
    out = []
    for u in itertools.product(range(-box, box + 1), repeat=len(e)):
        terms = [Fraction(x) * Fraction(p) ** ui for x, ui in zip(e, u)]
        total = sum(terms)
        if total and total.denominator == 1 and _no_vanishing_subsum(terms):
            out.append(u)
    return out


def lemma_3_2_delta_set(p, A, B, exponent_box):
    """Observed values of (X3 - X4) - (X1 - X2) over solutions of
    A p^X1 - A p^X2 + B p^X3 - B p^X4 = 0 with 0 <= X_i <= exponent_box.
    """
    if A == B:
        raise ValueError('Coefficients must differ')
    if not A or not B or A % p == 0 or B % p == 0:
        raise ValueError(f'Coefficients must be coprime to {p}')
    powers = [p ** k for k in range(exponent_box + 1)]
    out = set()
    rng = range(exponent_box + 1)
    for x1, x2, x3, x4 in itertools.product(rng, repeat=4):
        if A * (powers[x1] - powers[x2]) + B * (powers[x3] - powers[x4]) == 0:
            out.add((x3 - x4) - (x1 - x2))
    return out


def ess_bound_log10(n, r, digits=30):
    """log10 of exp((6n)^(3n) (nr + 1))."""
    value = sympy.Integer(6 * n) ** (3 * n) * (n * r + 1) / sympy.log(10)
    return sympy.N(value, digits)
