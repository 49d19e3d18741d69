"""Exact linear algebra over K and over Z.

The field routines only use +, -, *, / and truth testing of the entries, so
they run on RatFunc entries as well as on Fractions.  The integer routines
keep lattices in echelon form with unimodular row operations.
"""

import itertools
import logging
from bisect import bisect_left
from fractions import Fraction

log = logging.getLogger(__name__)

SMALL_DET = 8


def _default_size(e):
    return 0


class Solver():
    """Solve sum_i c_i * columns[i] = b for many targets b.

    Gauss-Jordan elimination of the column matrix is done once; the row
    operations are recorded in a transform so that each solve is a single
    matrix-vector product.
    """
    def __init__(self, columns, zero, one, size=_default_size):
        self.ncols = len(columns)
        self.nrows = len(columns[0]) if columns else 0
        self.zero, self.one = zero, one
        m = [[columns[c][r] for c in range(self.ncols)]
             for r in range(self.nrows)]
        t = [[one if i == j else zero for j in range(self.nrows)]
             for i in range(self.nrows)]
        pivots = []
        row = 0
        for col in range(self.ncols):
            cands = [r for r in range(row, self.nrows) if m[r][col]]
            if not cands:
                continue
            best = min(cands, key=lambda r: size(m[r][col]))
            m[row], m[best] = m[best], m[row]
            t[row], t[best] = t[best], t[row]
            inv = one / m[row][col]
            if not (m[row][col] == one):
                m[row] = [x * inv if x else x for x in m[row]]
                t[row] = [x * inv if x else x for x in t[row]]
            for r in range(self.nrows):
                if r != row and m[r][col]:
                    f = m[r][col]
                    m[r] = [x - f * y if y else x
                            for x, y in zip(m[r], m[row])]
                    t[r] = [x - f * y if y else x
                            for x, y in zip(t[r], t[row])]
            pivots.append(col)
            row += 1
            if row == self.nrows:
                break
        self.pivots = pivots
        self.rank = len(pivots)
        self.transform = t

    def solve(self, b):
        """Coefficients c with sum c_i columns[i] = b, or None."""
        y = []
        for trow in self.transform:
            acc = self.zero
            for x, bi in zip(trow, b):
                if x and bi:
                    acc = acc + x * bi
            y.append(acc)
        if any(y[self.rank:]):
            return None
        c = [self.zero] * self.ncols
        for i, col in enumerate(self.pivots):
            c[col] = y[i]
        return c


def rank(columns, zero, one):
    if not columns:
        return 0
    return Solver(columns, zero, one).rank


class IncrementalBasis():
    """Vectors added one by one; dependent ones are expressed in earlier."""
    def __init__(self, zero, one):
        self.zero, self.one = zero, one
        self.rows = []      # (pivot, reduced vector, combination)
        self.count = 0

    def add(self, vector):
        """Store an independent vector and return None, or return the
        coefficients expressing a dependent vector in the stored ones.
        """
        vec = list(vector)
        combo = [self.zero] * self.count
        for piv, row, rcombo in self.rows:
            f = vec[piv]
            if f:
                vec = [x - f * y if y else x for x, y in zip(vec, row)]
                combo = [c - f * rc if rc else c
                         for c, rc in zip(combo, rcombo)]
        pivot = next((i for i, x in enumerate(vec) if x), None)
        if pivot is None:
            return [-c if c else c for c in combo]
        inv = self.one / vec[pivot]
        row = [x * inv if x else x for x in vec]
        combo = [c * inv if c else c for c in combo] + [inv]
        for i, (piv, r, rc) in enumerate(self.rows):
            f = r[pivot]
            if f:
                r = [x - f * y if y else x for x, y in zip(r, row)]
                rc = rc + [self.zero]
                rc = [c - f * d if d else c for c, d in zip(rc, combo)]
                self.rows[i] = (piv, r, rc)
            else:
                self.rows[i] = (piv, r, rc + [self.zero])
        self.rows.append((pivot, row, combo))
        self.count += 1
        return None


def determinant(matrix, zero, one):
    """Determinant of a square matrix.

    Small matrices use division-free expansion over column subsets, so the
    entries only need to form a ring; larger ones use elimination in the
    field.
    """
    n = len(matrix)
    if n == 0:
        return one
    if n <= SMALL_DET:
        return _det_subsets(matrix, zero, one)
    return _det_gauss(matrix, zero, one)


def _det_subsets(matrix, zero, one):
    n = len(matrix)
    partial = {0: one}
    for k in range(n):
        nxt = {}
        row = matrix[k]
        for mask, value in partial.items():
            if not value:
                continue
            for j in range(n):
                bit = 1 << j
                if mask & bit or not row[j]:
                    continue
                above = bin(mask >> (j + 1)).count('1')
                term = row[j] * value
                if above & 1:
                    term = -term
                new = mask | bit
                nxt[new] = nxt[new] + term if new in nxt else term
        partial = nxt
    return partial.get((1 << n) - 1, zero)


def _det_gauss(matrix, zero, one):
    m = [list(r) for r in matrix]
    n = len(m)
    det = one
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = one / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y if y else x for x, y in zip(m[r], m[col])]
    return det


def mat_vec(matrix, vec, zero):
    out = []
    for row in matrix:
        acc = zero
        for a, b in zip(row, vec):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


# Integer lattices.

def int_xgcd(a, b):
    """Return (x, y, g) with x*a + y*b == g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


class IntLattice():
    """Sublattice of Z^N kept in row echelon form."""
    def __init__(self, dimension):
        self.N = dimension
        self.basis = []
        self.pivots = []

    @classmethod
    def spanned_by(cls, dimension, vectors):
        lat = cls(dimension)
        for v in vectors:
            lat.add_vector(v)
        return lat

    def _pivot_row(self, j):
        i = bisect_left(self.pivots, j)
        if i < len(self.pivots) and self.pivots[i] == j:
            return i
        return None

    def add_vector(self, vec0):
        """Add a generator, keeping the basis echelonized."""
        N = self.N
        assert len(vec0) == N, vec0
        vec = list(vec0)
        for j in range(N):
            if not vec[j]:
                continue
            p = self._pivot_row(j)
            if p is None:
                if vec[j] < 0:
                    vec = [-x for x in vec]
                where = bisect_left(self.pivots, j)
                self.basis.insert(where, vec)
                self.pivots.insert(where, j)
                return
            row = self.basis[p]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                vec = [v - q * r for v, r in zip(vec, row)]
            else:
                x, y, g = int_xgcd(a, b)
                ag, mbg = a // g, -b // g
                new_row = [x * r + y * v for r, v in zip(row, vec)]
                vec = [mbg * r + ag * v for r, v in zip(row, vec)]
                if new_row[j] < 0:
                    new_row = [-t for t in new_row]
                self.basis[p] = new_row

    def coordinates(self, vec):
        """Integer coefficients over the basis, or None if vec is not in it."""
        vec = list(vec)
        coords = []
        for piv, row in zip(self.pivots, self.basis):
            for j in range(piv):
                if vec[j]:
                    return None
            b, a = vec[piv], row[piv]
            if b % a:
                return None
            q = b // a
            coords.append(q)
            if q:
                vec = [v - q * r for v, r in zip(vec, row)]
        if any(vec):
            return None
        return coords

    def __contains__(self, vec):
        return self.coordinates(vec) is not None

    @property
    def rank(self):
        return len(self.basis)

    def saturation(self):
        """Z^N intersected with the rational span of self."""
        orth = integer_kernel(self.basis, self.N)
        sat = integer_kernel(orth, self.N)
        return IntLattice.spanned_by(self.N, sat)

    def index_in(self, other):
        """Index of self in a lattice of the same rank containing it."""
        rows = []
        for v in self.basis:
            c = other.coordinates(v)
            if c is None:
                raise ValueError('Lattice is not contained in the other')
            rows.append(c)
        if not rows:
            return 1
        det = _det_gauss([[Fraction(x) for x in r] for r in rows],
                         Fraction(0), Fraction(1))
        return abs(int(det))


def integer_kernel(rows, n):
    """Z-basis of {u in Z^n : r.u = 0 for every r in rows}."""
    m = len(rows)
    if m == 0:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    lat = IntLattice(m + n)
    for i in range(n):
        lat.add_vector([r[i] for r in rows] + [int(i == j) for j in range(n)])
    return [row[m:] for piv, row in zip(lat.pivots, lat.basis) if piv >= m]


def p_adic_order(n, p):
    """Exponent of the prime p in the nonzero integer n."""
    if n == 0:
        raise ValueError('Order of zero')
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def vectors_in_box(dimension, box):
    """Integer vectors with max-norm at most box."""
    return itertools.product(range(-box, box + 1), repeat=dimension)
