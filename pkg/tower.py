"""Finite separable extensions L/K presented as explicit towers.

Elements are stored as coordinates over K in the product power basis of the
tower: the coordinate with index i_1 + n_1*(i_2 + n_2*(...)) belongs to the
monomial y_1^i_1 y_2^i_2 ..., where n_k is the degree of level k.
"""

import dataclasses
import functools
import itertools
import logging
import re
from collections import namedtuple

import linalg
import textform
from funcfield import (BivarSym, Poly, RatFunc, gcd, is_irreducible,
                       is_squarefree, lcm, poly_factor, sym_decompose)
from gf import FqElem
from misctypes import (Certificate, ContextMismatch, InseparableError,
                       ParseError, TowerError)

log = logging.getLogger(__name__)

LABEL_RE = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')
RESERVED = ('x', 'z')
SPECIALIZATION_MAX_Q = 1024
SPECIALIZATION_MAX_EXT = 4
FACTOR_SEARCH_BUDGET = 200000
PRIMITIVE_CANDIDATES = 12


class UPoly():
    """Dense univariate polynomial with coefficients in a field or ring."""
    __slots__ = ('coeffs', 'zero', 'one')

    def __init__(self, coeffs, zero, one):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = coeffs
        self.zero, self.one = zero, one

    @classmethod
    def const(cls, c, zero, one):
        return cls([c], zero, one)

    @classmethod
    def var(cls, zero, one):
        return cls([zero, one], zero, one)

    def _new(self, coeffs):
        return UPoly(coeffs, self.zero, self.one)

    def _coerce(self, other):
        if isinstance(other, UPoly):
            return other
        return self._new([self.one * other])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        return (len(self.coeffs) == len(other.coeffs)
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return self._new([x + y for x, y in zip(a, b)] + a[len(b):])

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return self._new([])
        out = [self.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return self._new(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.degree != 0:
            raise ParseError('Only division by constants is supported')
        inv = self.one / other.coeffs[0]
        return self._new([c * inv for c in self.coeffs])

    def __pow__(self, n):
        if n < 0:
            raise ParseError('Negative power of a polynomial variable')
        result = self._new([self.one])
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other):
        if not other:
            raise ZeroDivisionError('Division by zero polynomial')
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return self._new([]), self
        inv = self.one / other.lead
        quot = [self.zero] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            c = c * inv
            quot[i - db] = c
            for j, b in enumerate(other.coeffs):
                if b:
                    rem[i - db + j] = rem[i - db + j] - c * b
        return self._new(quot), self._new(rem[:db])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self):
        return self._new([c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        inv = self.one / self.lead
        return self._new([c * inv for c in self.coeffs])

    def __call__(self, value):
        if not self.coeffs:
            return value * 0
        acc = self.coeffs[-1] + value * 0
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def format(self, name='Y'):
        terms = []
        for i in reversed(range(len(self.coeffs))):
            c = self.coeffs[i]
            if not c:
                continue
            text = str(c)
            if c == self.one and i:
                text = ''
            elif i and (any(ch in text[1:] for ch in '+-') or '/' in text):
                text = f'({text})'
            terms.append(textform.monomial(text, name, i))
        return textform.join_terms(terms)

    def __str__(self):
        return self.format()

    def as_json(self):
        return str(self)


def resultant(a, b):
    """Resultant of two polynomials over a field, by Euclid's algorithm."""
    zero, one = a.zero, a.one
    if not a or not b:
        return zero
    sign = one
    scale = one
    while b.degree > 0:
        m, n = a.degree, b.degree
        r = a % b
        if not r:
            return zero
        if (m * n) % 2:
            sign = -sign
        scale = scale * b.lead ** (m - r.degree)
        a, b = b, r
    return sign * scale * b.coeffs[0] ** a.degree


@dataclasses.dataclass(frozen=True)
class Level:
    """A level y^n + sum c_i y^i of a tower; c_i are flat coordinate tuples."""
    label: str
    coeffs: tuple
    certificate: Certificate
    witness: str = ''

    @property
    def degree(self):
        return len(self.coeffs)


class Tower():
    """Tower K = L_0 < L_1 < ... < L_r of simple extensions."""
    def __init__(self, ctx, levels=()):
        self.ctx = ctx
        self.levels = tuple(levels)
        self.labels = [lv.label for lv in self.levels]
        self.degrees = [lv.degree for lv in self.levels]
        self.strides = [1]
        for n in self.degrees:
            self.strides.append(self.strides[-1] * n)
        self.degree = self.strides[-1]
        self.zero_k = RatFunc(Poly.zero(ctx))
        self.one_k = RatFunc(Poly.one(ctx))
        self._frob_basis = None
        self._basis_disc = None
        self._traces = None

    @classmethod
    def build(cls, ctx, levels):
        """Build from [{'label', 'poly', 'assume'}] text descriptions."""
        tower = cls(ctx)
        for spec in levels:
            label = spec['label']
            text = spec['poly']
            assume = spec.get('assume', False)
            if not LABEL_RE.match(label) or label in RESERVED \
                    or label in tower.labels:
                raise TowerError(f'Invalid generator label: {label!r}')
            zero, one = tower.zero, tower.one
            symbols = {name: UPoly.const(tower.gen(name), zero, one)
                       for name in tower.labels}
            symbols['x'] = UPoly.const(tower.scalar(RatFunc.x(ctx)),
                                       zero, one)
            if ctx.k > 1:
                symbols['z'] = UPoly.const(
                    tower.scalar(FqElem(ctx, ctx.generator)), zero, one)
            symbols[label] = UPoly.var(zero, one)
            f = textform.evaluate(text, symbols,
                                  lambda n: UPoly.const(tower.scalar(n),
                                                        zero, one))
            if not isinstance(f, UPoly) or f.degree < 2:
                raise TowerError(f'Defining polynomial of {label} must have '
                                 f'degree at least 2: {text!r}')
            if not f.lead == one:
                log.error('Non-monic defining polynomial: %s', text)
                raise TowerError(f'Defining polynomial of {label} is not '
                                 f'monic: {text!r}')
            fd = f.derivative()
            if not fd or not resultant(f, fd):
                raise InseparableError(f'Defining polynomial of {label} is '
                                       f'not separable: {text!r}')
            coeffs = tuple(c.coords for c in f.coeffs[:-1])
            if assume:
                cert, witness = Certificate.assumed, 'declared'
            elif not tower.levels:
                cert, witness = certify_irreducible(
                    ctx, [c.scalar() for c in f.coeffs])
            else:
                trial = cls(ctx, tower.levels + (
                    Level(label, coeffs, Certificate.assumed),))
                cert, witness = _certify_top_level(trial, label)
            if cert == Certificate.assumed:
                log.warning('Irreducibility of %s assumed (%s)', label,
                            witness)
            level = Level(label, coeffs, cert, witness)
            tower = cls(ctx, tower.levels + (level,))
        return tower

    # Construction of elements.

    @property
    def zero(self):
        return AlgElem(self, (self.zero_k,) * self.degree)

    @property
    def one(self):
        return self.scalar(self.one_k)

    def scalar(self, a):
        """Embed an element of K (RatFunc, Poly, int or FqElem)."""
        if not isinstance(a, RatFunc):
            if isinstance(a, Poly):
                a = RatFunc(a)
            else:
                a = RatFunc.const(self.ctx, a)
        return AlgElem(self, (a,) + (self.zero_k,) * (self.degree - 1))

    def gen(self, label):
        """The generator with the given label."""
        try:
            k = self.labels.index(label)
        except ValueError:
            raise ParseError(f'Unknown generator {label!r}')
        return self.basis_element(self.strides[k])

    def basis_element(self, idx):
        coords = [self.zero_k] * self.degree
        coords[idx] = self.one_k
        return AlgElem(self, tuple(coords))

    def exponents(self, idx):
        return [(idx // s) % n for s, n in zip(self.strides, self.degrees)]

    def embed(self, elem):
        """Embed an element of a prefix tower."""
        if elem.tower is self:
            return elem
        pad = (self.zero_k,) * (self.degree - len(elem.coords))
        return AlgElem(self, elem.coords + pad)

    def parse(self, text):
        """Parse an element in x, z and the generator labels."""
        symbols = {name: self.gen(name) for name in self.labels}
        symbols['x'] = self.scalar(RatFunc.x(self.ctx))
        if self.ctx.k > 1:
            symbols['z'] = self.scalar(FqElem(self.ctx, self.ctx.generator))
        value = textform.evaluate(str(text), symbols, self.scalar)
        if not isinstance(value, AlgElem):
            value = self.scalar(value)
        return value

    def __str__(self):
        out = f'F_{self.ctx.q}(x)'
        prefix = Tower(self.ctx)
        for lv in self.levels:
            f = UPoly([prefix.embed(AlgElem(prefix, c)) for c in lv.coeffs]
                      + [prefix.one], prefix.zero, prefix.one)
            out += f'[{lv.label}]/({f.format(lv.label)})'
            prefix = Tower(self.ctx, prefix.levels + (lv,))
        return out

    def as_json(self):
        return dict(field=self.ctx, degree=self.degree,
                    levels=[dict(label=lv.label,
                                 certificate=lv.certificate,
                                 witness=lv.witness)
                            for lv in self.levels],
                    text=str(self))

    # Raw flat arithmetic.

    def _add(self, a, b):
        return tuple(x + y if y else x for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(x - y if y else x for x, y in zip(a, b))

    def _mul(self, a, b, level=None):
        if level is None:
            level = len(self.levels)
        if level == 0:
            return (a[0] * b[0],)
        n = self.degrees[level - 1]
        sub = self.strides[level - 1]
        zero = (self.zero_k,) * sub
        A = [a[i * sub:(i + 1) * sub] for i in range(n)]
        B = [b[i * sub:(i + 1) * sub] for i in range(n)]
        nzA = [(i, c) for i, c in enumerate(A) if any(c)]
        nzB = [(j, c) for j, c in enumerate(B) if any(c)]
        prod = [zero] * (2 * n - 1)
        for i, ca in nzA:
            for j, cb in nzB:
                prod[i + j] = self._add(prod[i + j],
                                        self._mul(ca, cb, level - 1))
        f = self.levels[level - 1].coeffs
        for deg in range(2 * n - 2, n - 1, -1):
            c = prod[deg]
            if not any(c):
                continue
            for i, fi in enumerate(f):
                if any(fi):
                    prod[deg - n + i] = self._sub(
                        prod[deg - n + i], self._mul(c, fi, level - 1))
        out = ()
        for chunk in prod[:n]:
            out += chunk
        return out

    def frob_basis(self):
        """Flat coordinates of b^p for every basis monomial b."""
        if self._frob_basis is None:
            p = self.ctx.p
            self._frob_basis = [(self.basis_element(i) ** p).coords
                                for i in range(self.degree)]
        return self._frob_basis

    def traces(self):
        """Traces over K of all basis monomials."""
        if self._traces is None:
            out = []
            for m in range(self.degree):
                bm = self.basis_element(m)
                acc = self.zero_k
                for j in range(self.degree):
                    c = (bm * self.basis_element(j)).coords[j]
                    if c:
                        acc = acc + c
                out.append(acc)
            self._traces = out
        return self._traces

    def basis_discriminant(self):
        """det(Tr(b_i b_j)) for the product power basis."""
        if self._basis_disc is None:
            if len(self.levels) == 1:
                lv = self.levels[0]
                f = UPoly([c[0] for c in lv.coeffs] + [self.one_k],
                          self.zero_k, self.one_k)
                n = f.degree
                r = resultant(f, f.derivative())
                self._basis_disc = -r if (n * (n - 1) // 2) % 2 else r
            else:
                self._basis_disc = self.trace_form_discriminant()
        return self._basis_disc

    def trace_form_discriminant(self):
        tr = self.traces()
        D = self.degree
        rows = []
        for i in range(D):
            row = []
            for j in range(D):
                u = self.basis_element(i) * self.basis_element(j)
                acc = self.zero_k
                for c, t in zip(u.coords, tr):
                    if c and t:
                        acc = acc + c * t
                row.append(acc)
            rows.append(row)
        return det_over_k(rows, self.ctx)

    # Backend protocol shared with SymTower.

    def degree_of(self, u):
        return minimal_polynomial(u).degree

    def subfield_contains(self, v, u):
        """Whether u lies in K(v)."""
        d = self.degree_of(v)
        powers = [(v ** i).coords for i in range(d)]
        solver = linalg.Solver(powers, self.zero_k, self.one_k)
        return solver.solve(u.coords) is not None

    def is_base_integral(self, u):
        return u.is_scalar() and u.coords[0].is_poly()

    def is_base_unit(self, u):
        return u.is_scalar() and u.coords[0].is_constant() and bool(u)

    def constant_ratio(self, u, v):
        """c in F_q^* with u = c*v, or None."""
        for a, b in zip(u.coords, v.coords):
            if b:
                c = a / b
                if not c.is_constant() or not c:
                    return None
                return c.constant() if u == v * c else None
        return None

    def quadratic_conjugate(self, u):
        g = minimal_polynomial(u)
        if g.degree != 2:
            return None
        return self.scalar(-g.poly.coeffs[1]) - u

    def discriminant(self, u):
        return discriminant(u)

    def base_element(self, u):
        return u.scalar()


def det_over_k(rows, ctx):
    """Determinant of a matrix over K, computed on cleared denominators."""
    n = len(rows)
    if n == 0:
        return RatFunc(Poly.one(ctx))
    denom = Poly.one(ctx)
    prows = []
    for row in rows:
        L = Poly.one(ctx)
        for c in row:
            if c and not c.den.is_one():
                L = lcm(L, c.den)
        prows.append([(c.num * (L // c.den)) if c else Poly.zero(ctx)
                      for c in row])
        denom = denom * L
    det = linalg.determinant(prows, Poly.zero(ctx), Poly.one(ctx))
    return RatFunc(det, denom)


class AlgElem():
    """Element of a tower, as coordinates over K."""
    __slots__ = ('tower', 'coords')

    def __init__(self, tower, coords):
        self.tower = tower
        self.coords = tuple(coords)

    def _coerce(self, other):
        if isinstance(other, AlgElem):
            if other.tower is not self.tower:
                raise ContextMismatch('Elements of different towers')
            return other
        if isinstance(other, (RatFunc, Poly, int, FqElem)):
            return self.tower.scalar(other)
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return AlgElem(self.tower, self.tower._add(self.coords, b.coords))

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.tower, tuple(-c for c in self.coords))

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return AlgElem(self.tower, self.tower._sub(self.coords, b.coords))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b - self

    def __mul__(self, other):
        if isinstance(other, (RatFunc, Poly, int, FqElem)):
            return self.scale(other)
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if b.is_scalar():
            return self.scale(b.coords[0])
        if self.is_scalar():
            return b.scale(self.coords[0])
        return AlgElem(self.tower, self.tower._mul(self.coords, b.coords))

    __rmul__ = __mul__

    def scale(self, a):
        if not isinstance(a, RatFunc):
            a = self.tower.scalar(a).coords[0]
        return AlgElem(self.tower, tuple(c * a if c else c
                                         for c in self.coords))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def multiplication_matrix(self):
        """Columns are the coordinates of self*b_j."""
        t = self.tower
        return [(self * t.basis_element(j)).coords for j in range(t.degree)]

    def inverse(self):
        if not self:
            raise ZeroDivisionError('Inverse of zero in tower')
        if self.is_scalar():
            return self.tower.scalar(self.coords[0].inverse())
        t = self.tower
        solver = linalg.Solver(self.multiplication_matrix(), t.zero_k,
                               t.one_k)
        c = solver.solve(t.one.coords)
        if c is None:
            raise ZeroDivisionError('Element is not invertible')
        return AlgElem(t, c)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if b.is_scalar():
            return self.scale(b.coords[0].inverse())
        return self * b.inverse()

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b * self.inverse()

    def frobenius(self, e=1):
        """self^(p^e) through the cached p-th powers of the basis."""
        t = self.tower
        coords = self.coords
        for _ in range(e):
            if self.is_scalar() or t.degree == 1:
                coords = (coords[0].frobenius(),) + coords[1:]
                continue
            acc = t.zero.coords
            for c, bp in zip(coords, t.frob_basis()):
                if c:
                    cp = c.frobenius()
                    acc = tuple(x + cp * y if y else x
                                for x, y in zip(acc, bp))
            coords = acc
        return AlgElem(t, coords)

    def trace(self):
        return sum((c * tr for c, tr in zip(self.coords, self.tower.traces())
                    if c and tr), self.tower.zero_k)

    def norm(self):
        m = self.multiplication_matrix()
        rows = [list(r) for r in zip(*m)]
        return det_over_k(rows, self.tower.ctx)

    def is_scalar(self):
        return not any(self.coords[1:])

    def scalar(self):
        assert self.is_scalar(), self
        return self.coords[0]

    @property
    def denominator(self):
        """Common denominator of the coordinates."""
        den = Poly.one(self.tower.ctx)
        for c in self.coords:
            if c and not c.den.is_one():
                den = lcm(den, c.den)
        return den

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, (RatFunc, Poly, int, FqElem, AlgElem)):
            b = self._coerce(other)
            return self.coords == b.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def format(self):
        t = self.tower
        terms = []
        for idx in reversed(range(t.degree)):
            c = self.coords[idx]
            if not c:
                continue
            mono = '*'.join(textform.monomial('', lab, e)
                            for lab, e in zip(t.labels, t.exponents(idx))
                            if e)
            text = str(c)
            if not mono:
                terms.append(text)
                continue
            if c.is_one():
                terms.append(mono)
            elif text == '-1':
                terms.append('-' + mono)
            else:
                if any(ch in text[1:] for ch in '+-') or '/' in text:
                    text = f'({text})'
                terms.append(f'{text}*{mono}')
        return textform.join_terms(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f'AlgElem({self})'

    def as_json(self):
        return str(self)


# Irreducibility certificates.

def _eval_embedded(poly, c, big, embed):
    acc = 0
    for coeff in reversed(poly.coeffs()):
        acc = big.add(big.mul(acc, c), embed(coeff))
    return acc


def _clear_denominators(coeffs, ctx):
    """Integral coefficient polynomials with unit content."""
    L = Poly.one(ctx)
    for c in coeffs:
        if c and not c.den.is_one():
            L = lcm(L, c.den)
    polys = [c.num * (L // c.den) if c else Poly.zero(ctx) for c in coeffs]
    content = Poly.zero(ctx)
    for f in polys:
        content = gcd(content, f) if content else f.monic()
    if content and not content.is_one():
        polys = [f // content for f in polys]
    return polys


def certify_irreducible(ctx, coeffs):
    """Certify irreducibility over K of sum coeffs[i] Y^i.

    First tries specializations x = c in small extensions of F_q, where an
    irreducible squarefree image of full degree proves irreducibility; then,
    for integral monic input, an exhaustive search for monic factors with
    degree-bounded coefficients.  Returns (Certificate, witness text).
    """
    polys = _clear_denominators(coeffs, ctx)
    n = len(polys) - 1
    for j in range(1, SPECIALIZATION_MAX_EXT + 1):
        big, embed = ctx.extension(j)
        if big.q > SPECIALIZATION_MAX_Q:
            break
        for c in big.elements():
            vals = [_eval_embedded(f, c, big, embed) for f in polys]
            if not vals[-1]:
                continue
            spec = Poly.from_coeffs(big, vals)
            if spec.degree == n and is_squarefree(spec) \
                    and is_irreducible(spec):
                witness = f'x={big.format(c)} in F_{big.q}'
                log.debug('Irreducibility certified by %s', witness)
                return Certificate.specialization, witness
    if all(c.is_poly() for c in coeffs) and coeffs[-1].is_one():
        found = exhaustive_factor_search([c.num for c in coeffs])
        if found is None:
            return Certificate.assumed, 'factor search budget exceeded'
        if found:
            log.error('Defining polynomial has factor %s', found[0])
            raise TowerError(f'Defining polynomial is reducible: factor '
                             f'{found[0]}')
        return Certificate.exhaustive, 'bounded factor search'
    return Certificate.assumed, 'no certifying specialization'


def _certify_top_level(tower, label):
    """Certify the top level of a tower over the field below it.

    The tower is a field exactly when some element has an irreducible
    minimal polynomial over K of degree [L:K].  Candidates are
    w + c*(y_1 + x*y_2 + ...) for small polynomials c.
    """
    top = tower.gen(label)
    x = tower.scalar(RatFunc.x(tower.ctx))
    below = tower.zero
    for i, lower in enumerate(tower.labels[:-1]):
        below = below + tower.gen(lower) * x ** i
    candidates = itertools.islice(_polys_up_to(tower.ctx, 2),
                                  PRIMITIVE_CANDIDATES)
    for c in candidates:
        t = top + tower.scalar(RatFunc(c)) * below
        g = minimal_polynomial(t)
        log.debug('Level %s: minimal polynomial of %s has degree %d', label,
                  t, g.degree)
        if g.degree < tower.degree:
            continue
        try:
            cert, witness = certify_irreducible(tower.ctx, g.poly.coeffs)
        except TowerError as e:
            raise TowerError(f'Defining polynomial of {label} is reducible '
                             f'over the tower below it: {e}') from e
        return cert, f'{witness} for {t}'
    return Certificate.assumed, 'no primitive element found'


def _divisors(f):
    """Monic divisors of a nonzero polynomial."""
    fac = poly_factor(f)
    divs = [Poly.one(f.ctx)]
    for pi, m in fac.factors:
        divs = [d * pi ** e for d in divs for e in range(m + 1)]
    return divs


def _polys_up_to(ctx, degree):
    """All polynomials of degree at most degree (including zero)."""
    if degree < 0:
        yield Poly.zero(ctx)
        return
    total = ctx.q ** (degree + 1)
    for n in range(total):
        coeffs = []
        for _ in range(degree + 1):
            n, r = divmod(n, ctx.q)
            coeffs.append(r)
        yield Poly(ctx, Poly.zero(ctx).ops.from_list(coeffs))


def exhaustive_factor_search(coeffs):
    """Search monic factors of a monic polynomial over F_q[x].

    Returns [] if none exist, [factor] if one is found, None if the search
    space exceeds the budget.
    """
    ctx = coeffs[0].ctx
    n = len(coeffs) - 1
    a0 = coeffs[0]
    zero, one = RatFunc(Poly.zero(ctx)), RatFunc(Poly.one(ctx))
    f = UPoly([RatFunc(c) for c in coeffs], zero, one)
    if not a0:
        return ['Y']
    bound = 0
    for i in range(1, n + 1):
        c = coeffs[n - i]
        if c:
            bound = max(bound, c.degree / i)
    units = [u for u in ctx.nonzero()]
    divisors = [d.scale(u) for d in _divisors(a0) for u in units]
    for k in range(1, n // 2 + 1):
        degs = [int(i * bound) for i in range(1, k)]
        size = len(divisors)
        for d in degs:
            size *= ctx.q ** (d + 1)
        if size > FACTOR_SEARCH_BUDGET:
            return None
        middle = [list(_polys_up_to(ctx, d)) for d in reversed(degs)]
        for g0 in divisors:
            for mids in itertools.product(*middle):
                g = UPoly([RatFunc(g0)] + [RatFunc(m) for m in mids] + [one],
                          zero, one)
                if not f % g:
                    return [g.format()]
    return []


# Galois action.

class GaloisMap():
    """Automorphism of a tower fixing K, given by generator images."""
    def __init__(self, tower, images, name='sigma'):
        self.tower = tower
        self.name = name
        self.images = [images.get(lab, tower.gen(lab)) for lab in tower.labels]
        for lab in images:
            if lab not in tower.labels:
                raise TowerError(f'Unknown generator in map {name}: {lab}')
        self._verify()

    @classmethod
    def parse(cls, tower, images, name='sigma'):
        return cls(tower, {lab: tower.parse(text)
                           for lab, text in images.items()}, name)

    @classmethod
    def identity(cls, tower):
        return cls(tower, {}, 'id')

    def _verify(self):
        t = self.tower
        for k, lv in enumerate(t.levels):
            sub = t.strides[k]
            acc = self.images[k] ** lv.degree
            for i, c in enumerate(lv.coeffs):
                if any(c):
                    lower = AlgElem(t, c + (t.zero_k,) * (t.degree - sub))
                    acc = acc + self(lower) * self.images[k] ** i
            if acc:
                log.error('Image of %s under %s is not a root', lv.label,
                          self.name)
                raise TowerError(f'Image of {lv.label} under {self.name} '
                                 f'is not a root of its defining polynomial')

    def _apply(self, coords, level):
        t = self.tower
        if level == 0:
            return t.scalar(coords[0])
        n = t.degrees[level - 1]
        sub = t.strides[level - 1]
        acc = t.zero
        img = self.images[level - 1]
        for i in reversed(range(n)):
            chunk = coords[i * sub:(i + 1) * sub]
            acc = acc * img
            if any(chunk):
                acc = acc + self._apply(chunk, level - 1)
        return acc

    def __call__(self, elem):
        if elem.is_scalar():
            return elem
        return self._apply(elem.coords, len(self.tower.levels))

    def compose(self, other):
        """self after other."""
        return GaloisMap(self.tower, {lab: self(img) for lab, img in
                                      zip(self.tower.labels, other.images)},
                         f'{self.name}*{other.name}')

    def __str__(self):
        return self.name

    def as_json(self):
        return dict(name=self.name,
                    images={lab: str(img) for lab, img in
                            zip(self.tower.labels, self.images)})


def apply_galois(sigma, t):
    return sigma(t)


def frobenius_power(t, e):
    """t^(p^e)."""
    if e < 0:
        raise ValueError(f'Negative Frobenius exponent: {e}')
    return t.frobenius(e)


# Minimal polynomials and discriminants.

MinPoly = namedtuple('MinPoly', ['poly', 'degree'])


def minimal_polynomial(t):
    """Monic minimal polynomial of t over K and d = [K(t):K]."""
    if isinstance(t, BivarSym):
        return get_sym_tower(t.ctx).minimal_polynomial(t)
    tower = t.tower
    zero, one = tower.zero_k, tower.one_k
    basis = linalg.IncrementalBasis(zero, one)
    power = tower.one
    for d in range(tower.degree + 1):
        combo = basis.add(power.coords)
        if combo is not None:
            poly = UPoly([-c for c in combo] + [one], zero, one)
            return MinPoly(poly, d)
        power = power * t
    raise AssertionError('No linear dependency among powers')


def power_matrix(t, d=None):
    """Rows are the coordinates of t^0, ..., t^(d-1)."""
    tower = t.tower
    d = tower.degree if d is None else d
    rows = []
    power = tower.one
    for _ in range(d):
        rows.append(list(power.coords))
        power = power * t
    return rows


def discriminant(t, method='auto'):
    """Discriminant of t over K.

    method 'basis' uses det(power matrix)^2 times the basis discriminant
    (t must generate the tower); 'resultant' uses the minimal polynomial;
    'auto' tries the former and falls back to the latter.
    """
    if isinstance(t, BivarSym):
        return get_sym_tower(t.ctx).discriminant(t)
    tower = t.tower
    if method in ('auto', 'basis') and tower.degree >= 2:
        det = det_over_k(power_matrix(t), tower.ctx)
        if det:
            return det * det * tower.basis_discriminant()
        if method == 'basis':
            raise TowerError('Element does not generate the tower')
    g = minimal_polynomial(t)
    if g.degree < 2:
        raise ValueError('Discriminant needs an element of degree at least 2')
    r = resultant(g.poly, g.poly.derivative())
    if not r:
        raise InseparableError(f'Inseparable element: {t}')
    d = g.degree
    return -r if (d * (d - 1) // 2) % 2 else r


ConjugateSet = namedtuple('ConjugateSet', ['element', 'conjugates', 'maps'])


def conjugates(t, maps=None):
    """Distinct images of t under maps; they must be all its conjugates."""
    if isinstance(t, BivarSym):
        return get_sym_tower(t.ctx).conjugates(t)
    images, used = [], []
    for sigma in maps:
        u = sigma(t)
        if u not in images:
            images.append(u)
            used.append(sigma)
    g = minimal_polynomial(t)
    if len(images) != g.degree:
        raise TowerError(f'Maps give {len(images)} distinct images, '
                         f'expected {g.degree}')
    tower = t.tower
    prod = UPoly([tower.one], tower.zero, tower.one)
    for u in images:
        prod = prod * UPoly([-u, tower.one], tower.zero, tower.one)
    for c, gc in zip(prod.coeffs, g.poly.coeffs):
        if not c.is_scalar() or c.scalar() != gc:
            raise TowerError('Symmetric functions of the images are not '
                             'the minimal polynomial coefficients')
    return ConjugateSet(t, images, used)


def conjugate_product_discriminant(cs):
    """prod_{i<j} (t_i - t_j)^2 from a full conjugate set."""
    conj = cs.conjugates
    acc = None
    for i in range(len(conj)):
        for j in range(i + 1, len(conj)):
            diff = conj[i] - conj[j]
            acc = diff * diff if acc is None else acc * diff * diff
    if isinstance(acc, BivarSym):
        return acc
    if not acc.is_scalar():
        raise TowerError('Conjugate product is not in K')
    return acc.scalar()


def conjugate_difference_unit(s_set, t_set, i, j):
    """(t_(i) - t_(j)) / (s_(i) - s_(j)) with conjugates taken by the same
    maps.
    """
    if i == j:
        raise ValueError('Indices must differ')
    si, sj = s_set.conjugates[i], s_set.conjugates[j]
    ti = s_set.maps[i](t_set.element)
    tj = s_set.maps[j](t_set.element)
    den = si - sj
    if not den:
        raise InseparableError('Coincident conjugates')
    if isinstance(den, BivarSym):
        return (ti - tj).divexact(den)
    return (ti - tj) / den


# Symmetric backend.

class SymTower():
    """F_q(x, y) over F_q(x+y, xy), elements as BivarSym polynomials."""
    degree = 2
    labels = ('x', 'y')

    def __init__(self, ctx):
        self.ctx = ctx

    def parse(self, text):
        value = BivarSym.parse(self.ctx, text)
        if not isinstance(value, BivarSym):
            value = BivarSym.const(self.ctx, value)
        return value

    def sigma(self, u):
        return u.sigma()

    @staticmethod
    def identity(u):
        return u

    def degree_of(self, u):
        return 1 if u.is_symmetric() else 2

    def subfield_contains(self, v, u):
        return self.degree_of(u) == 1 or self.degree_of(v) == 2

    def is_base_integral(self, u):
        return u.is_symmetric()

    def is_base_unit(self, u):
        return u.is_constant() and bool(u)

    def constant_ratio(self, u, v):
        if not v:
            return None
        key, c = v.leading()
        a = u.terms.get(key, 0)
        if not a:
            return None
        ratio = self.ctx.div(a, c)
        return ratio if u == v.scale(ratio) else None

    def quadratic_conjugate(self, u):
        return None if u.is_symmetric() else u.sigma()

    def minimal_polynomial(self, u):
        zero, one = BivarSym.const(self.ctx, 0), BivarSym.const(self.ctx, 1)
        if u.is_symmetric():
            return MinPoly(UPoly([-u, one], zero, one), 1)
        v = u.sigma()
        return MinPoly(UPoly([u * v, -(u + v), one], zero, one), 2)

    def discriminant(self, u):
        if u.is_symmetric():
            raise ValueError('Discriminant needs an element of degree 2')
        d = u - u.sigma()
        if not d:
            raise InseparableError(f'Inseparable element: {u}')
        return d * d

    def conjugates(self, u):
        if u.is_symmetric():
            raise TowerError('Symmetric element has a single conjugate')
        return ConjugateSet(u, [u, u.sigma()], [self.identity, self.sigma])

    def base_element(self, u):
        return sym_decompose(u)

    def __str__(self):
        return f'F_{self.ctx.q}(x,y)/F_{self.ctx.q}(x+y,xy)'

    def as_json(self):
        return dict(field=self.ctx, degree=2, text=str(self))


@functools.lru_cache(maxsize=None)
def get_sym_tower(ctx):
    return SymTower(ctx)


def backend_of(u):
    """Tower or SymTower hosting u."""
    if isinstance(u, BivarSym):
        return get_sym_tower(u.ctx)
    return u.tower
