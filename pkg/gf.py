"""Finite fields F_{p^k} for small p and k.

Elements are represented internally as integers 0..q-1 whose base-p digits
are the coefficients of the element as a polynomial in the generator z.
FqCtx operates on these raw integers; FqElem is the value-like public wrapper.
"""

import functools
import logging

import textform
from misctypes import ConfigError, ContextMismatch, ParseError

log = logging.getLogger(__name__)

# Little-endian coefficient tuples of monic irreducible moduli.
DEFAULT_MODULI = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 1): (0, 1),
    (3, 2): (2, 2, 1),
    (7, 1): (0, 1),
    (7, 2): (3, 6, 1),
}

MAX_P = 2 ** 16
MAX_TABLE = 2 ** 16


def is_prime(n):
    """Trial division primality test."""
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod_fp(a, b, p):
    """Remainder of a by monic-or-not b over F_p (coefficient lists)."""
    a = _trim(list(a))
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _monic_polys(p, degree):
    """Generate monic polynomials of given degree over F_p."""
    for n in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            n, r = divmod(n, p)
            coeffs.append(r)
        yield coeffs + [1]


def is_irreducible_fp(modulus, p):
    """Trial factorization of a monic polynomial over F_p."""
    k = len(modulus) - 1
    if k < 1:
        return False
    for degree in range(1, k // 2 + 1):
        for cand in _monic_polys(p, degree):
            if not _mod_fp(modulus, cand, p):
                return False
    return True


def find_modulus(p, k):
    """Return the default modulus for (p, k), searching when not tabulated."""
    try:
        return DEFAULT_MODULI[(p, k)]
    except KeyError:
        pass
    if k == 1:
        return (0, 1)
    for cand in _monic_polys(p, k):
        if cand[0] and is_irreducible_fp(cand, p):
            return tuple(cand)
    raise ConfigError(f'No irreducible polynomial of degree {k} over F_{p}')


@functools.lru_cache(maxsize=None)
def get_ctx(p, k=1, modulus=None):
    """Shared context constructor."""
    return FqCtx(p, k, modulus)


class FqCtx():
    """Finite field F_{p^k} = F_p[z]/(modulus)."""
    def __init__(self, p, k=1, modulus=None):
        if not is_prime(p) or p > MAX_P:
            raise ConfigError(
                f'Characteristic must be a prime ≤ {MAX_P}: {p}')
        if k < 1 or p ** k >= 2 ** 64:
            raise ConfigError(f'Invalid extension degree: {k}')
        if modulus is None:
            modulus = find_modulus(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ConfigError(f'Modulus must be monic of degree {k}: '
                              f'{modulus}')
        if k > 1 and not is_irreducible_fp(modulus, p):
            log.error('Reducible modulus %s over F_%s', modulus, p)
            raise ConfigError(f'Modulus is reducible over F_{p}: {modulus}')
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        self.binary = p == 2
        self.key = (p, modulus)
        self._exp = self._log = None
        if k > 1:
            if self.q > MAX_TABLE:
                raise ConfigError(f'Field too large for tables: {self.q}')
            self._build_tables()

    def __eq__(self, other):
        return isinstance(other, FqCtx) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f'FqCtx({self.p}, {self.k})'

    def __str__(self):
        if self.k == 1:
            return f'F_{self.p}'
        return f'F_{self.q}[z]/({self.format_poly(self.modulus)})'

    def as_json(self):
        return dict(p=self.p, k=self.k, modulus=list(self.modulus))

    # Digit conversions.

    def digits(self, a):
        """Coefficients of raw element a in z, little-endian, length k."""
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, digits):
        """Raw element from coefficient list (reduced by the modulus)."""
        digits = [int(d) % self.p for d in digits]
        if len(digits) > self.k:
            digits = _mod_fp(digits, self.modulus, self.p)
        value = 0
        for d in reversed(digits):
            value = value * self.p + d
        return value

    def _slow_mul(self, a, b):
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return self.from_digits(prod)

    def _build_tables(self):
        order = self.q - 1
        for g in range(2, self.q):
            exp = [1] * order
            x = 1
            for i in range(1, order):
                x = self._slow_mul(x, g)
                if x == 1:
                    break
                exp[i] = x
            else:
                break
        else:
            raise ConfigError(f'No primitive element found in {self}')
        log_ = [0] * self.q
        for i, x in enumerate(exp):
            log_[x] = i
        self._exp, self._log = exp, log_
        self.primitive = g
        if not self.binary and self.q <= 256:
            self._add = [[self.from_digits(
                [x + y for x, y in zip(self.digits(a), self.digits(b))])
                for b in range(self.q)] for a in range(self.q)]
        else:
            self._add = None

    # Raw arithmetic.

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.binary:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return self.from_digits([x + y for x, y in zip(self.digits(a),
                                                       self.digits(b))])

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        if self.binary:
            return a
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        if self.binary:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError('Inverse of zero in ' + str(self))
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        if a == 0:
            return 1 if n == 0 else 0
        if self.k == 1:
            return pow(a, n, self.p)
        return self._exp[self._log[a] * n % (self.q - 1)]

    def frob(self, a, e=1):
        """a^(p^e)."""
        if self.k == 1 or a == 0:
            return a
        e %= self.k
        return self._exp[self._log[a] * self.p ** e % (self.q - 1)]

    def pth_root(self, a):
        """The unique b with b^p = a, as a^(p^(k-1))."""
        return self.frob(a, self.k - 1)

    def from_int(self, n):
        """Image of an integer in the prime field."""
        return n % self.p

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    def order(self, a):
        """Multiplicative order of a nonzero raw element."""
        if a == 0:
            raise ZeroDivisionError('Order of zero')
        n, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def random(self, rng, nonzero=False):
        if nonzero:
            return rng.randrange(1, self.q)
        return rng.randrange(self.q)

    def primitive_root(self):
        """Raw generator of the multiplicative group."""
        if self.k > 1:
            return self.primitive
        if self.p == 2:
            return 1
        return next(g for g in range(2, self.p)
                    if self.order(g) == self.p - 1)

    @property
    def generator(self):
        """Raw value of z (k > 1)."""
        if self.k == 1:
            raise ParseError('Prime field has no generator z')
        return self.p

    # Text forms.

    def format_poly(self, digits, name='z'):
        terms = []
        for i in reversed(range(len(digits))):
            c = digits[i]
            if c:
                terms.append(textform.monomial('' if c == 1 and i else str(c),
                                               name, i))
        return textform.join_terms(terms)

    def format(self, a):
        """Canonical text of raw element."""
        if self.k == 1:
            return str(a)
        return self.format_poly(self.digits(a))

    def is_compound(self, a):
        """Whether the text form needs parentheses inside a product."""
        return self.k > 1 and sum(1 for d in self.digits(a) if d) > 1

    def parse(self, text):
        """Parse canonical text into an FqElem."""
        symbols = {}
        if self.k > 1:
            symbols['z'] = FqElem(self, self.generator)
        value = textform.evaluate(str(text), symbols, lambda n: self(n))
        return self(value)

    def __call__(self, value):
        """Coerce int or FqElem into an FqElem of this field."""
        if isinstance(value, FqElem):
            self.check(value.ctx)
            return value
        if isinstance(value, int):
            return FqElem(self, self.from_int(value))
        raise TypeError(f'Cannot coerce {type(value).__name__} into {self}')

    def check(self, other):
        if other is not self and other != self:
            raise ContextMismatch(f'{self} vs {other}')

    # Extensions.

    @functools.lru_cache(maxsize=None)
    def extension(self, j):
        """Return (F_{q^j} context, embedding of raw elements)."""
        if j == 1:
            return self, (lambda a: a)
        big = get_ctx(self.p, self.k * j)
        if self.k == 1:
            return big, (lambda a: a)
        root = None
        for r in big.nonzero():
            acc = 0
            for c in reversed(self.modulus):
                acc = big.add(big.mul(acc, r), c)
            if acc == 0:
                root = r
                break
        if root is None:
            raise ConfigError(f'No embedding of {self} into {big}')
        powers = [big.pow(root, i) for i in range(self.k)]

        def embed(a):
            value = 0
            for d, rp in zip(self.digits(a), powers):
                if d:
                    value = big.add(value, big.mul(d, rp))
            return value
        return big, embed


class FqElem():
    """Element of F_{p^k} with its context."""
    __slots__ = ('ctx', 'value')

    def __init__(self, ctx, value):
        self.ctx = ctx
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FqElem):
            self.ctx.check(other.ctx)
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.sub(b, self.value))

    def __neg__(self):
        return FqElem(self.ctx, self.ctx.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.div(b, self.value))

    def __pow__(self, n):
        return FqElem(self.ctx, self.ctx.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.key, self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.ctx.format(self.value)

    def __repr__(self):
        return f'FqElem({self})'

    def as_json(self):
        return str(self)

    def inverse(self):
        return FqElem(self.ctx, self.ctx.inv(self.value))

    def frobenius(self, e=1):
        return fq_frobenius(self, e)

    def pth_root(self):
        return fq_pth_root(self)


def fq_arith(a, b, op):
    """Apply one of add, sub, mul, div to two elements of the same field."""
    ops = dict(add=FqElem.__add__, sub=FqElem.__sub__, mul=FqElem.__mul__,
               div=FqElem.__truediv__)
    if a.ctx != b.ctx:
        raise ContextMismatch(f'{a.ctx} vs {b.ctx}')
    return ops[op](a, b)


def fq_frobenius(a, e):
    """Return a^(p^e)."""
    if e < 0:
        raise ValueError(f'Negative Frobenius exponent: {e}')
    return FqElem(a.ctx, a.ctx.frob(a.value, e))


def fq_pth_root(a):
    """Return the unique b with b^p = a."""
    return FqElem(a.ctx, a.ctx.pth_root(a.value))
