"""The base ring O = F_q[x] and its fraction field K = F_q(x).

Polynomials, rational functions, factorization, places and valuations,
T-integers and T-units, plus the bivariate symmetric backend used for
F_q[x+y, xy] inside F_q[x, y].
"""

import dataclasses
import functools
import logging
import math
import random
from collections import namedtuple

import textform
from gf import FqCtx, FqElem
from misctypes import ContextMismatch, ParseError

log = logging.getLogger(__name__)

NEG_INF = float('-inf')
KRONECKER_THRESHOLD = 24


def _trim(lst):
    while lst and lst[-1] == 0:
        lst.pop()
    return lst


class _BinaryOps():
    """Polynomials over F_2 as integer bit vectors."""
    zero = 0
    one = 1

    def __init__(self, ctx):
        self.ctx = ctx
        self.p = 2

    @staticmethod
    def from_list(cs):
        s = ''.join('1' if c else '0' for c in reversed(cs))
        return int(s, 2) if s else 0

    @staticmethod
    def to_list(a):
        return [int(c) for c in reversed(bin(a)[2:])] if a else []

    @staticmethod
    def degree(a):
        return a.bit_length() - 1

    @staticmethod
    def length(a):
        return a.bit_length()

    @staticmethod
    def coeff(a, i):
        return (a >> i) & 1

    @staticmethod
    def lead(a):
        return 1 if a else 0

    @staticmethod
    def add(a, b):
        return a ^ b

    sub = add

    @staticmethod
    def neg(a):
        return a

    @staticmethod
    def mul(a, b):
        if not a or not b:
            return 0
        if bin(a).count('1') > bin(b).count('1'):
            a, b = b, a
        acc = 0
        while a:
            low = a & -a
            acc ^= b << (low.bit_length() - 1)
            a ^= low
        return acc

    @staticmethod
    def scale(a, c):
        return a if c else 0

    @staticmethod
    def shift(a, k):
        return a << k

    @staticmethod
    def shift_down(a, k):
        return a >> k

    @staticmethod
    def trailing_zeros(a):
        return (a & -a).bit_length() - 1

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError('Polynomial division by zero')
        db = b.bit_length()
        q = 0
        while a.bit_length() >= db:
            s = a.bit_length() - db
            a ^= b << s
            q |= 1 << s
        return q, a

    def mod(self, a, b):
        if not b:
            raise ZeroDivisionError('Polynomial division by zero')
        db = b.bit_length()
        while a.bit_length() >= db:
            a ^= b << (a.bit_length() - db)
        return a

    @staticmethod
    def derivative(a):
        n = a.bit_length()
        return (a >> 1) & int('01' * (n // 2 + 1), 2)

    @staticmethod
    def frob(a, e=1):
        for _ in range(e):
            a = int('0'.join(bin(a)[2:]), 2)
        return a

    @staticmethod
    def p_components(a):
        s = bin(a)[2:][::-1]
        return [int(s[r::2][::-1] or '0', 2) for r in range(2)]

    @staticmethod
    def eval(a, c):
        if not c:
            return a & 1
        return bin(a).count('1') & 1


class _DenseOps():
    """Polynomials over F_q as trimmed tuples of raw coefficients."""
    zero = ()
    one = (1,)

    def __init__(self, ctx):
        self.ctx = ctx
        self.p = ctx.p
        self.k = ctx.k
        self.prime = ctx.k == 1
        if not self.prime:
            # Digit vectors of z^j mod modulus for k <= j <= 2k-2.
            self._red = {}
            for j in range(ctx.k, 2 * ctx.k - 1):
                self._red[j] = ctx.digits(ctx.from_digits([0] * j + [1]))

    def from_list(self, cs):
        return tuple(_trim(list(cs)))

    @staticmethod
    def to_list(a):
        return list(a)

    @staticmethod
    def degree(a):
        return len(a) - 1

    @staticmethod
    def length(a):
        return len(a)

    @staticmethod
    def coeff(a, i):
        return a[i] if 0 <= i < len(a) else 0

    @staticmethod
    def lead(a):
        return a[-1] if a else 0

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        if self.prime:
            p = self.p
            out = [(x + y) % p for x, y in zip(a, b)]
        else:
            out = [self.ctx.add(x, y) for x, y in zip(a, b)]
        out.extend(a[len(b):])
        return tuple(_trim(out))

    def neg(self, a):
        if self.prime:
            return tuple(-x % self.p for x in a)
        return tuple(self.ctx.neg(x) for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, a, c):
        if not c:
            return ()
        if self.prime:
            return tuple(x * c % self.p for x in a)
        return tuple(self.ctx.mul(x, c) for x in a)

    @staticmethod
    def shift(a, k):
        return (0,) * k + a if a else a

    @staticmethod
    def shift_down(a, k):
        return a[k:]

    @staticmethod
    def trailing_zeros(a):
        for i, c in enumerate(a):
            if c:
                return i
        return -1

    def mul(self, a, b):
        if not a or not b:
            return ()
        if min(len(a), len(b)) <= KRONECKER_THRESHOLD:
            return self._schoolbook(a, b)
        return self._kronecker(a, b)

    def _schoolbook(self, a, b):
        out = [0] * (len(a) + len(b) - 1)
        if self.prime:
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            p = self.p
            return tuple(_trim([c % p for c in out]))
        ctx = self.ctx
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
        return tuple(_trim(out))

    def _kronecker(self, a, b):
        """Multiply by packing coefficient digits into one big integer."""
        p, k = self.p, self.k
        slots = 2 * k - 1
        bound = min(len(a), len(b)) * k * (p - 1) ** 2
        width = (bound.bit_length() + 8) // 8
        zero_tail = bytes(width * (k - 1))

        def pack(poly):
            if k == 1:
                data = b''.join(c.to_bytes(width, 'little') for c in poly)
            else:
                data = b''.join(
                    b''.join(d.to_bytes(width, 'little')
                             for d in self.ctx.digits(c)) + zero_tail
                    for c in poly)
            return int.from_bytes(data, 'little')

        n = len(a) + len(b) - 1
        data = (pack(a) * pack(b)).to_bytes(n * slots * width, 'little')
        if k == 1:
            out = [int.from_bytes(data[i * width:(i + 1) * width], 'little')
                   % p for i in range(n)]
            return tuple(_trim(out))
        out = []
        step = slots * width
        for i in range(n):
            chunk = data[i * step:(i + 1) * step]
            s = [int.from_bytes(chunk[j * width:(j + 1) * width], 'little')
                 for j in range(slots)]
            digits = s[:k]
            for j in range(k, slots):
                if s[j]:
                    for t, rd in enumerate(self._red[j]):
                        digits[t] += s[j] * rd
            out.append(self.ctx.from_digits([d % p for d in digits]))
        return tuple(_trim(out))

    def divmod(self, a, b):
        return self._divide(a, b, True)

    def mod(self, a, b):
        return self._divide(a, b, False)[1]

    def _divide(self, a, b, want_quotient):
        if not b:
            raise ZeroDivisionError('Polynomial division by zero')
        db = len(b) - 1
        if len(a) - 1 < db:
            return (), a
        ctx = self.ctx
        inv = ctx.inv(b[-1])
        nz = [(j, c) for j, c in enumerate(b) if c]
        r = list(a)
        q = [0] * (len(a) - db) if want_quotient else None
        if self.prime:
            p = self.p
            for i in range(len(a) - 1, db - 1, -1):
                c = r[i] % p
                if c:
                    c = c * inv % p
                    if want_quotient:
                        q[i - db] = c
                    s = i - db
                    for j, bj in nz:
                        r[s + j] -= c * bj
            rem = [x % p for x in r[:db]]
        else:
            for i in range(len(a) - 1, db - 1, -1):
                c = r[i]
                if c:
                    c = ctx.mul(c, inv)
                    if want_quotient:
                        q[i - db] = c
                    s = i - db
                    for j, bj in nz:
                        r[s + j] = ctx.sub(r[s + j], ctx.mul(c, bj))
            rem = r[:db]
        quot = tuple(_trim(q)) if want_quotient else None
        return quot, tuple(_trim(rem))

    def derivative(self, a):
        ctx = self.ctx
        out = [ctx.mul(ctx.from_int(i), c) for i, c in enumerate(a)][1:]
        return tuple(_trim(out))

    def frob(self, a, e=1):
        if not a:
            return a
        step = self.p ** e
        out = [0] * ((len(a) - 1) * step + 1)
        for i, c in enumerate(a):
            out[i * step] = self.ctx.frob(c, e)
        return tuple(out)

    def p_components(self, a):
        p = self.p
        root = self.ctx.pth_root
        return [tuple(_trim([root(c) for c in a[r::p]])) for r in range(p)]

    def eval(self, a, c):
        ctx = self.ctx
        acc = 0
        for coeff in reversed(a):
            acc = ctx.add(ctx.mul(acc, c), coeff)
        return acc


@functools.lru_cache(maxsize=None)
def poly_ops(ctx):
    """Arithmetic backend for polynomials over ctx."""
    if ctx.p == 2 and ctx.k == 1:
        return _BinaryOps(ctx)
    return _DenseOps(ctx)


class Poly():
    """Univariate polynomial over F_q in the variable x."""
    __slots__ = ('ctx', 'ops', 'raw')

    def __init__(self, ctx, raw):
        self.ctx = ctx
        self.ops = poly_ops(ctx)
        self.raw = raw

    @classmethod
    def from_coeffs(cls, ctx, coeffs):
        """From little-endian coefficients (ints, residues or FqElems)."""
        raw = []
        for c in coeffs:
            if isinstance(c, FqElem):
                ctx.check(c.ctx)
                raw.append(c.value)
            else:
                raw.append(ctx.from_int(c) if ctx.k == 1 else c % ctx.q)
        return cls(ctx, poly_ops(ctx).from_list(raw))

    @classmethod
    def const(cls, ctx, c):
        """Constant polynomial from an FqElem or an integer."""
        c = c.value if isinstance(c, FqElem) else ctx.from_int(c)
        return cls(ctx, poly_ops(ctx).from_list([c]))

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, poly_ops(ctx).zero)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, poly_ops(ctx).one)

    @classmethod
    def x(cls, ctx):
        return cls.monomial(ctx, 1, 1)

    @classmethod
    def monomial(cls, ctx, c, n):
        ops = poly_ops(ctx)
        return cls(ctx, ops.shift(ops.from_list([c]), n))

    @classmethod
    def random(cls, ctx, degree, rng, monic=False):
        coeffs = [ctx.random(rng) for _ in range(degree)]
        coeffs.append(1 if monic else ctx.random(rng, nonzero=True))
        return cls(ctx, poly_ops(ctx).from_list(coeffs))

    @classmethod
    def parse(cls, ctx, text):
        value = parse_ratfunc(ctx, text)
        if not value.is_poly():
            raise ParseError(f'Not a polynomial: {text!r}')
        return value.num

    def _new(self, raw):
        return Poly(self.ctx, raw)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f'{self.ctx} vs {other.ctx}')
            return other.raw
        if isinstance(other, (int, FqElem)):
            return Poly.const(self.ctx, other).raw
        return None

    # Queries.

    @property
    def degree(self):
        d = self.ops.degree(self.raw)
        return NEG_INF if d < 0 else d

    def coeffs(self):
        """Little-endian raw coefficients."""
        return self.ops.to_list(self.raw)

    def coeff(self, i):
        return self.ops.coeff(self.raw, i)

    @property
    def lead(self):
        return self.ops.lead(self.raw)

    def is_zero(self):
        return not self.raw

    def is_one(self):
        return self.raw == self.ops.one

    def is_constant(self):
        return self.ops.degree(self.raw) <= 0

    def is_monic(self):
        return self.lead == 1

    def is_monomial(self):
        """Whether self is c*x^n."""
        return bool(self.raw) and (self.ops.trailing_zeros(self.raw)
                                   == self.ops.degree(self.raw))

    def trailing_zeros(self):
        """Multiplicity of x as a factor."""
        if not self.raw:
            return math.inf
        return self.ops.trailing_zeros(self.raw)

    def __bool__(self):
        return bool(self.raw)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self.raw == other.raw
        if isinstance(other, (int, FqElem)):
            return self.raw == Poly.const(self.ctx, other).raw
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.key, self.raw))

    def sort_key(self):
        return (self.ops.degree(self.raw), tuple(reversed(self.coeffs())))

    # Arithmetic.

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self._new(self.ops.add(self.raw, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self._new(self.ops.sub(self.raw, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self._new(self.ops.sub(b, self.raw))

    def __neg__(self):
        return self._new(self.ops.neg(self.raw))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self._new(self.ops.mul(self.raw, b))

    __rmul__ = __mul__

    def __divmod__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        q, r = self.ops.divmod(self.raw, b)
        return self._new(q), self._new(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self._new(self.ops.mod(self.raw, b))

    def __truediv__(self, other):
        if isinstance(other, (Poly, RatFunc, int, FqElem)):
            return RatFunc(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, FqElem)):
            return RatFunc(Poly.const(self.ctx, other)) / self
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            return RatFunc(self) ** n
        result = self._new(self.ops.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        return self._new(self.ops.scale(self.raw, c))

    def shift(self, n):
        """Multiply by x^n, or exactly divide by x^-n."""
        if n >= 0:
            return self._new(self.ops.shift(self.raw, n))
        return self._new(self.ops.shift_down(self.raw, -n))

    def monic(self):
        if not self.raw:
            return self
        return self.scale(self.ctx.inv(self.lead))

    def derivative(self):
        return self._new(self.ops.derivative(self.raw))

    def frobenius(self, e=1):
        """self^(p^e)."""
        return self._new(self.ops.frob(self.raw, e))

    def p_components(self):
        """Polynomials c_r with self = sum_r x^r * c_r^p."""
        return [self._new(c) for c in self.ops.p_components(self.raw)]

    def pth_root(self):
        """The polynomial r with r^p = self; ValueError if none."""
        comps = self.p_components()
        if any(comps[1:]):
            raise ValueError(f'Not a p-th power: {self}')
        return comps[0]

    def __call__(self, c):
        """Evaluate at a raw field element or FqElem."""
        if isinstance(c, FqElem):
            return FqElem(self.ctx, self.ops.eval(self.raw, c.value))
        return self.ops.eval(self.raw, c)

    def powmod(self, n, m):
        result = Poly.one(self.ctx)
        base = self % m
        while n:
            if n & 1:
                result = (result * base) % m
            n >>= 1
            if n:
                base = (base * base) % m
        return result

    def valuation_at(self, pi):
        """Multiplicity of the irreducible pi in self."""
        if not self.raw:
            return math.inf
        if pi.is_monomial() and pi.degree == 1:
            return self.trailing_zeros()
        n, a = 0, self
        while True:
            q, r = divmod(a, pi)
            if r:
                return n
            a, n = q, n + 1

    # Text.

    def _coeff_text(self, c, exp):
        if c == 1 and exp:
            return ''
        text = self.ctx.format(c)
        if self.ctx.is_compound(c) and exp:
            return f'({text})'
        return text

    def format(self, name='x'):
        coeffs = self.coeffs()
        terms = [textform.monomial(self._coeff_text(c, i), name, i)
                 for i, c in reversed(list(enumerate(coeffs))) if c]
        return textform.join_terms(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f'Poly({self})'

    def as_json(self):
        return str(self)


def gcd(a, b):
    """Monic greatest common divisor."""
    ops = a.ops
    x, y = a.raw, b.raw
    while y:
        x, y = y, ops.mod(x, y)
    return Poly(a.ctx, x).monic()


def xgcd(a, b):
    """Return (g, s, t) with g = s*a + t*b monic."""
    r0, r1 = a, b
    s0, s1 = Poly.one(a.ctx), Poly.zero(a.ctx)
    t0, t1 = Poly.zero(a.ctx), Poly.one(a.ctx)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = a.ctx.inv(r0.lead)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def lcm(a, b):
    if not a or not b:
        return Poly.zero(a.ctx)
    return (a * b // gcd(a, b)).monic()


def is_squarefree(f):
    return gcd(f, f.derivative()).is_one()


# Factorization.

Factorization = namedtuple('Factorization', ['lc', 'factors'])


def squarefree_decomposition(f):
    """Return [(g, m)] with monic squarefree coprime g and f = lc*prod g^m."""
    f = f.monic()
    result = []
    i = 1
    c = gcd(f, f.derivative())
    w = f // c
    while not w.is_one():
        y = gcd(w, c)
        fac = w // y
        if not fac.is_one():
            result.append((fac, i))
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        p = f.ctx.p
        result.extend((g, m * p) for g, m in
                      squarefree_decomposition(c.pth_root()))
    return result


def _frob_mod(h, f, e):
    """h^(p^e) mod f."""
    ctx = f.ctx
    if ctx.q <= 64:
        return h.frobenius(e) % f
    return h.powmod(ctx.p ** e, f)


def distinct_degree(f):
    """Distinct-degree factorization of a monic squarefree polynomial."""
    ctx = f.ctx
    result = []
    x = Poly.x(ctx)
    h = x % f if f.degree > 1 else x
    i = 1
    fstar = f
    while fstar.degree >= 2 * i:
        h = _frob_mod(h, fstar, ctx.k)
        g = gcd(fstar, h - x)
        if not g.is_one():
            result.append((g, i))
            fstar = fstar // g
            h = h % fstar
        i += 1
    if fstar.degree > 0:
        result.append((fstar, fstar.degree))
    return result


def equal_degree(f, d, rng):
    """Cantor-Zassenhaus splitting of f into irreducibles of degree d."""
    ctx = f.ctx
    n = f.degree
    if n == d:
        return [f]
    factors = [f]
    while len(factors) < n // d:
        h = Poly.random(ctx, n - 1, rng)
        if h.is_constant():
            continue
        if ctx.p == 2:
            # Trace map from F_{q^d} down to F_2.
            u = h % f
            acc = u
            for _ in range(ctx.k * d - 1):
                u = (u * u) % f
                acc = acc + u
        else:
            acc = h.powmod((ctx.q ** d - 1) // 2, f) - 1
        new = []
        for g in factors:
            if g.degree == d:
                new.append(g)
                continue
            s = gcd(g, acc)
            if 0 < s.degree < g.degree:
                log.debug('Split %s into degrees %s+%s', g, s.degree,
                          g.degree - s.degree)
                new.extend([s, g // s])
            else:
                new.append(g)
        factors = new
    return factors


def poly_factor(f, seed=0):
    """Factor f into leading coefficient and monic irreducible powers."""
    if not f:
        raise ValueError('Cannot factor the zero polynomial')
    rng = random.Random(seed)
    factors = []
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            factors.extend((u.monic(), m) for u in equal_degree(h, d, rng))
    factors.sort(key=lambda t: (t[0].sort_key(), t[1]))
    return Factorization(FqElem(f.ctx, f.lead), factors)


def is_irreducible(f):
    """Rabin irreducibility test."""
    n = f.degree
    if n == NEG_INF or n < 1:
        return False
    if n == 1:
        return True
    f = f.monic()
    ctx = f.ctx
    x = Poly.x(ctx)
    if not is_squarefree(f):
        return False
    h = x
    powers = {}
    for i in range(1, n + 1):
        h = _frob_mod(h, f, ctx.k)
        powers[i] = h
    if powers[n] != x % f:
        return False
    for r in _prime_factors(n):
        if not gcd(f, powers[n // r] - x).is_one():
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# Rational functions.

class RatFunc():
    """Element num/den of K = F_q(x) in canonical form."""
    __slots__ = ('num', 'den')

    def __init__(self, num, den=None, normalized=False):
        if isinstance(num, RatFunc):
            num, den2 = num.num, num.den
            den = den2 if den is None else den2 * den
        if den is None:
            self.num, self.den = num, Poly.one(num.ctx)
            return
        if normalized:
            self.num, self.den = num, den
            return
        self.num, self.den = _normalize(num, den)

    @property
    def ctx(self):
        return self.num.ctx

    @classmethod
    def const(cls, ctx, c):
        return cls(Poly.const(ctx, c))

    @classmethod
    def x(cls, ctx):
        return cls(Poly.x(ctx))

    @classmethod
    def parse(cls, ctx, text):
        return parse_ratfunc(ctx, text)

    @classmethod
    def random(cls, ctx, degree, rng):
        num = Poly.random(ctx, rng.randint(0, degree), rng)
        den = Poly.random(ctx, rng.randint(0, degree), rng, monic=True)
        return cls(num, den)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.ctx != self.ctx:
                raise ContextMismatch(f'{self.ctx} vs {other.ctx}')
            return other
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ContextMismatch(f'{self.ctx} vs {other.ctx}')
            return RatFunc(other)
        if isinstance(other, (int, FqElem)):
            return RatFunc.const(self.ctx, other)
        return None

    def is_zero(self):
        return not self.num

    def is_poly(self):
        return self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def is_one(self):
        return self.den.is_one() and self.num.is_one()

    def constant(self):
        """Raw constant value (only for constants)."""
        assert self.is_constant(), self
        return self.num.coeff(0)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self.num.raw == b.num.raw and self.den.raw == b.den.raw

    def __hash__(self):
        if self.den.is_one():
            return hash(self.num)
        return hash((self.num, self.den))

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if not b.num:
            return self
        if not self.num:
            return b
        if self.den == b.den:
            if self.den.is_one():
                return RatFunc(self.num + b.num)
            return RatFunc(self.num + b.num, self.den)
        if b.den.is_one():
            return RatFunc(self.num + b.num * self.den, self.den,
                           normalized=True)
        if self.den.is_one():
            return RatFunc(self.num * b.den + b.num, b.den, normalized=True)
        return RatFunc(self.num * b.den + b.num * self.den, self.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, normalized=True)

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if not self.num or not b.num:
            return RatFunc(Poly.zero(self.ctx))
        if b.is_one():
            return self
        if self.is_one():
            return b
        if self.den.is_one() and b.den.is_one():
            return RatFunc(self.num * b.num)
        if b.is_constant():
            return RatFunc(self.num.scale(b.constant()), self.den,
                           normalized=True)
        if self.is_constant():
            return RatFunc(b.num.scale(self.constant()), b.den,
                           normalized=True)
        if self.den.is_monomial() and b.den.is_monomial():
            return RatFunc(self.num * b.num, self.den * b.den)
        g1 = gcd(self.num, b.den)
        g2 = gcd(b.num, self.den)
        num = (self.num // g1) * (b.num // g2)
        den = (self.den // g2) * (b.den // g1)
        return RatFunc(num, den, normalized=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError('Inverse of zero in K')
        inv = self.ctx.inv(self.num.lead)
        return RatFunc(self.den.scale(inv), self.num.scale(inv),
                       normalized=True)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, normalized=True)

    def frobenius(self, e=1):
        return RatFunc(self.num.frobenius(e), self.den.frobenius(e),
                       normalized=True)

    def valuation(self, place):
        return valuation(self, place)

    def divisor(self):
        """Valuation vector over the support of self (including inf)."""
        if not self.num:
            raise ValueError('Divisor of zero')
        div = {}
        for part, sign in ((self.num, 1), (self.den, -1)):
            if part.is_constant():
                continue
            for pi, m in poly_factor(part).factors:
                div[Place.finite(pi, check=False)] = sign * m
        inf = Place.infinity(self.ctx)
        div[inf] = valuation(self, inf)
        return div

    def format(self, name='x'):
        num = self.num.format(name)
        if self.den.is_one():
            return num
        den = self.den.format(name)
        if any(ch in num[1:] for ch in '+-'):
            num = f'({num})'
        if not self.den.is_monomial():
            den = f'({den})'
        return f'{num}/{den}'

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f'RatFunc({self})'

    def as_json(self):
        return str(self)


def _normalize(num, den):
    if not den:
        raise ZeroDivisionError('Zero denominator')
    ctx = num.ctx
    if not num:
        return num, Poly.one(ctx)
    if den.is_constant():
        return num.scale(ctx.inv(den.lead)), Poly.one(ctx)
    if den.is_monomial():
        t = min(num.trailing_zeros(), den.degree)
        num, den = num.shift(-t), den.shift(-t)
    else:
        g = gcd(num, den)
        if not g.is_one():
            num, den = num // g, den // g
    inv = ctx.inv(den.lead)
    if inv != 1:
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def parse_ratfunc(ctx, text):
    """Parse canonical text over ctx in x (and z for extension fields)."""
    symbols = {'x': RatFunc.x(ctx)}
    if ctx.k > 1:
        symbols['z'] = RatFunc.const(ctx, FqElem(ctx, ctx.generator))
    value = textform.evaluate(str(text), symbols,
                              lambda n: RatFunc.const(ctx, n))
    if isinstance(value, FqElem):
        value = RatFunc.const(ctx, value)
    return value


# Places.

@dataclasses.dataclass(frozen=True)
class Place:
    """A place of K: a monic irreducible polynomial, or infinity."""
    ctx: FqCtx
    pi: Poly = None

    @classmethod
    def infinity(cls, ctx):
        return cls(ctx, None)

    @classmethod
    def finite(cls, pi, check=True):
        if check and (not pi.is_monic() or not is_irreducible(pi)):
            log.error('Not a monic irreducible: %s', pi)
            raise ValueError(f'Place must be monic irreducible: {pi}')
        return cls(pi.ctx, pi)

    @classmethod
    def parse(cls, ctx, text):
        text = text.strip()
        if text in ('inf', 'infinity', '∞'):
            return cls.infinity(ctx)
        return cls.finite(Poly.parse(ctx, text))

    @property
    def is_infinite(self):
        return self.pi is None

    @property
    def degree(self):
        return 1 if self.pi is None else self.pi.degree

    def sort_key(self):
        if self.pi is None:
            return (0, ())
        return (1, self.pi.sort_key())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return 'inf' if self.pi is None else str(self.pi)

    def as_json(self):
        return str(self)


@dataclasses.dataclass(frozen=True)
class PlaceSet:
    """Finite set of places containing infinity (the T of O_{K,T})."""
    ctx: FqCtx
    places: frozenset

    def __post_init__(self):
        assert Place.infinity(self.ctx) in self.places, self

    @classmethod
    def of(cls, ctx, places=()):
        places = set(places)
        places.add(Place.infinity(ctx))
        return cls(ctx, frozenset(places))

    @classmethod
    def parse(cls, ctx, text):
        """Parse comma separated places, e.g. 'inf,x,x+1'."""
        items = [x for x in str(text).split(',') if x.strip()]
        places = [Place.parse(ctx, x) for x in items]
        if len(set(places)) != len(places):
            raise ValueError(f'Duplicate places in {text!r}')
        return cls.of(ctx, places)

    def finite(self):
        return sorted(x for x in self.places if not x.is_infinite)

    def __contains__(self, place):
        return place in self.places

    def __len__(self):
        return len(self.places)

    def __iter__(self):
        return iter(sorted(self.places))

    def __str__(self):
        return ','.join(str(x) for x in self)

    def as_json(self):
        return [str(x) for x in self]


def valuation(a, v):
    """Valuation of a at place v; math.inf for zero."""
    if isinstance(a, Poly):
        a = RatFunc(a)
    if not a:
        return math.inf
    if v.is_infinite:
        return a.den.degree - a.num.degree
    return a.num.valuation_at(v.pi) - a.den.valuation_at(v.pi)


def product_formula_check(a):
    """Sum of n_v * v(a) over the support of a; zero by the product formula."""
    if isinstance(a, Poly):
        a = RatFunc(a)
    if not a:
        raise ValueError('Product formula needs a nonzero element')
    return sum(place.degree * v for place, v in a.divisor().items())


def strip_places(f, T):
    """Remove from f every factor supported at the finite places of T."""
    for place in T.finite():
        pi = place.pi
        if pi.degree == 1 and pi.is_monomial():
            f = f.shift(-f.trailing_zeros())
            continue
        while True:
            q, r = divmod(f, pi)
            if r:
                break
            f = q
    return f


def is_T_integer(a, T):
    """v(a) >= 0 at every place outside T."""
    if isinstance(a, Poly):
        return True
    if not a:
        return True
    return strip_places(a.den, T).is_constant()


def is_T_unit(a, T):
    """v(a) = 0 at every place outside T."""
    if isinstance(a, Poly):
        a = RatFunc(a)
    if not a:
        raise ValueError('Unit test of zero')
    return (strip_places(a.num, T).is_constant()
            and strip_places(a.den, T).is_constant())


def unit_generators(T):
    """Generators of O_{K,T}^* modulo F_q^*."""
    return [place.pi for place in T.finite()]


def unit_group_rank(T):
    """Rank of O_{K,T}^*, exactly |T|-1 on the projective line."""
    return len(unit_generators(T))


# Bivariate symmetric backend.

class BivarSym():
    """Sparse polynomial in x, y over F_q."""
    __slots__ = ('ctx', 'terms')

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = {k: v for k, v in terms.items() if v}

    @classmethod
    def const(cls, ctx, c):
        if isinstance(c, FqElem):
            c = c.value
        else:
            c = ctx.from_int(c)
        return cls(ctx, {(0, 0): c})

    @classmethod
    def x(cls, ctx):
        return cls(ctx, {(1, 0): 1})

    @classmethod
    def y(cls, ctx):
        return cls(ctx, {(0, 1): 1})

    @classmethod
    def e1(cls, ctx):
        return cls(ctx, {(1, 0): 1, (0, 1): 1})

    @classmethod
    def e2(cls, ctx):
        return cls(ctx, {(1, 1): 1})

    @classmethod
    def parse(cls, ctx, text):
        symbols = dict(x=cls.x(ctx), y=cls.y(ctx))
        if ctx.k > 1:
            symbols['z'] = cls.const(ctx, FqElem(ctx, ctx.generator))
        return textform.evaluate(str(text), symbols,
                                 lambda n: cls.const(ctx, n))

    def _coerce(self, other):
        if isinstance(other, BivarSym):
            self.ctx.check(other.ctx)
            return other
        if isinstance(other, (int, FqElem)):
            return BivarSym.const(self.ctx, other)
        return None

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(k == (0, 0) for k in self.terms)

    def constant(self):
        return self.terms.get((0, 0), 0)

    def __eq__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        ctx = self.ctx
        terms = dict(self.terms)
        for k, v in b.terms.items():
            terms[k] = ctx.add(terms.get(k, 0), v)
        return BivarSym(ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return BivarSym(self.ctx, {k: self.ctx.neg(v)
                                   for k, v in self.terms.items()})

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        ctx = self.ctx
        terms = {}
        for (i, j), u in self.terms.items():
            for (k, m), v in b.terms.items():
                key = (i + k, j + m)
                terms[key] = ctx.add(terms.get(key, 0), ctx.mul(u, v))
        return BivarSym(ctx, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError('Negative power of a polynomial')
        result = BivarSym.const(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        q = self.divexact(b)
        if q is None:
            raise ValueError(f'Inexact division: {self} / {b}')
        return q

    def scale(self, c):
        return BivarSym(self.ctx, {k: self.ctx.mul(v, c)
                                   for k, v in self.terms.items()})

    def frobenius(self, e=1):
        """self^(p^e), exponent by exponent."""
        ctx = self.ctx
        m = ctx.p ** e
        return BivarSym(ctx, {(i * m, j * m): ctx.frob(v, e)
                              for (i, j), v in self.terms.items()})

    def sigma(self):
        """The swap x <-> y."""
        return BivarSym(self.ctx, {(j, i): v
                                   for (i, j), v in self.terms.items()})

    def is_symmetric(self):
        return self.terms == self.sigma().terms

    def leading(self):
        """Lexicographically largest exponent and its coefficient."""
        key = max(self.terms)
        return key, self.terms[key]

    @property
    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(i + j for i, j in self.terms)

    def divexact(self, other):
        """Exact quotient self/other, or None if other does not divide."""
        if not other:
            raise ZeroDivisionError('Division by zero polynomial')
        ctx = self.ctx
        (bi, bj), bc = other.leading()
        inv = ctx.inv(bc)
        rem = self
        quot = {}
        while rem:
            (ri, rj), rc = rem.leading()
            if ri < bi or rj < bj:
                return None
            c = ctx.mul(rc, inv)
            key = (ri - bi, rj - bj)
            quot[key] = c
            rem = rem - BivarSym(ctx, {key: c}) * other
        return BivarSym(ctx, quot)

    def format(self):
        terms = []
        for (i, j) in sorted(self.terms, reverse=True):
            c = self.terms[(i, j)]
            var = '*'.join(filter(None, [textform.monomial('', 'x', i)
                                         if i else '',
                                         textform.monomial('', 'y', j)
                                         if j else '']))
            if not var:
                terms.append(self.ctx.format(c))
            elif c == 1:
                terms.append(var)
            elif self.ctx.is_compound(c):
                terms.append(f'({self.ctx.format(c)})*{var}')
            else:
                terms.append(f'{self.ctx.format(c)}*{var}')
        return textform.join_terms(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f'BivarSym({self})'

    def as_json(self):
        return str(self)


class SymPoly(dict):
    """Polynomial in the elementary symmetric e1 = x+y, e2 = xy."""
    def __init__(self, ctx, terms=()):
        super().__init__(terms)
        self.ctx = ctx

    def expand(self):
        """Evaluate at e1 = x+y, e2 = xy."""
        ctx = self.ctx
        e1, e2 = BivarSym.e1(ctx), BivarSym.e2(ctx)
        result = BivarSym(ctx, {})
        for (a, b), c in self.items():
            result = result + (e1 ** a * e2 ** b).scale(c)
        return result

    def __str__(self):
        terms = []
        for (a, b) in sorted(self, reverse=True):
            c = self[(a, b)]
            var = '*'.join(filter(None, [textform.monomial('', 'e1', a)
                                         if a else '',
                                         textform.monomial('', 'e2', b)
                                         if b else '']))
            if not var:
                terms.append(self.ctx.format(c))
            elif c == 1:
                terms.append(var)
            else:
                terms.append(f'{self.ctx.format(c)}*{var}')
        return textform.join_terms(terms)

    def as_json(self):
        return str(self)


def sym_decompose(f):
    """Write a symmetric f as g(e1, e2); None if f is not symmetric."""
    if not f.is_symmetric():
        return None
    ctx = f.ctx
    e1 = BivarSym.e1(ctx)
    e1_powers = [BivarSym.const(ctx, 1)]
    g = SymPoly(ctx)
    rem = f
    while rem:
        (i, j), c = rem.leading()
        if i < j:
            return None
        g[(i - j, j)] = ctx.add(g.get((i - j, j), 0), c)
        while len(e1_powers) <= i - j:
            e1_powers.append(e1_powers[-1] * e1)
        # e2^j is the single monomial x^j y^j.
        term = BivarSym(ctx, {(a + j, b + j): v for (a, b), v in
                              e1_powers[i - j].terms.items()})
        rem = rem - term.scale(c)
    return SymPoly(ctx, {k: v for k, v in g.items() if v})
