"""
Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction` values (always in lowest terms with a
positive denominator). Rank, kernels and linear solves run fraction-free
(Bareiss) elimination on integer rows, obtained by clearing the denominators
of each row separately.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
import math
import re

from convexcomp.errors import DimensionMismatch, RationalFormatError

Rat = Fraction

_RATIONAL = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$")


def rat(value):
    """
    Read an int, a Fraction or a string of the form "p/q" or "p".

    Floats are refused, exactness is not negotiable.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise RationalFormatError("cannot read boolean {0!r} as a rational".format(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL.match(value)
        if not match:
            raise RationalFormatError("malformed rational {0!r}".format(value))
        num, den = match.groups()
        den = 1 if den is None else int(den)
        if den == 0:
            raise RationalFormatError("zero denominator in {0!r}".format(value))
        return Fraction(int(num), den)
    raise RationalFormatError("cannot read {0!r} as a rational".format(value))


def fmt(value):
    """Canonical string form, "p/q" or "p" when q is 1."""
    return str(rat(value))


class RVec(tuple):
    """
    Immutable vector of rationals.

    Arithmetic operators act entrywise (``+``, ``-``, scalar ``*`` and ``/``);
    use :meth:`concat` for concatenation.
    """

    def __new__(cls, entries=()):
        return super().__new__(cls, [rat(x) for x in entries])

    @property
    def dim(self):
        return len(self)

    def _same_dim(self, other):
        other = RVec(other)
        if len(other) != len(self):
            raise DimensionMismatch(
                "vector dimensions differ: {0} vs {1}".format(len(self), len(other)))
        return other

    def __add__(self, other):
        other = self._same_dim(other)
        return RVec(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        other = self._same_dim(other)
        return RVec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return RVec(-a for a in self)

    def __mul__(self, scalar):
        scalar = rat(scalar)
        return RVec(scalar * a for a in self)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        scalar = rat(scalar)
        return RVec(a / scalar for a in self)

    def dot(self, other):
        other = self._same_dim(other)
        return sum((a * b for a, b in zip(self, other)), Fraction(0))

    def concat(self, other):
        return RVec(tuple(self) + tuple(RVec(other)))

    def is_zero(self):
        return all(a == 0 for a in self)

    def __repr__(self):
        return "RVec({0})".format(", ".join(fmt(a) for a in self))


@dataclass(frozen=True)
class RMat:
    """Dense row-major rational matrix."""
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(rat(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionMismatch(
                "{0} entries for a {1}x{2} matrix".format(
                    len(entries), self.rows, self.cols))
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [tuple(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise DimensionMismatch(
                    "row {0} has {1} entries, expected {2}".format(i, len(row), cols))
        return cls(len(rows), cols, tuple(x for row in rows for x in row))

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i):
        return RVec(self.entries[i * self.cols:(i + 1) * self.cols])

    def row_vectors(self):
        return [self.row(i) for i in range(self.rows)]

    def column(self, j):
        return RVec(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self):
        return RMat.from_rows(
            [self.column(j) for j in range(self.cols)], cols=self.rows)

    def mat_vec(self, v):
        if len(v) != self.cols:
            raise DimensionMismatch(
                "matrix has {0} columns, vector has {1} entries".format(self.cols, len(v)))
        return RVec(self.row(i).dot(v) for i in range(self.rows))


def identity(n):
    return RMat.from_rows(
        [[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)


def zeros(rows, cols):
    return RMat(rows, cols, (0,) * (rows * cols))


def transpose(m):
    return m.transpose()


def mat_vec(m, v):
    return m.mat_vec(v)


def vsum(vectors, dim):
    """Sum of a (possibly empty) list of vectors of dimension `dim`."""
    return reduce(lambda a, b: a + b, vectors, RVec([0] * dim))


def kron(v, w):
    """Kronecker product, left factor is the slow index."""
    v, w = RVec(v), RVec(w)
    return RVec(a * b for a in v for b in w)


def kron_all(vectors):
    """Left fold of :func:`kron`; the empty product is the scalar vector (1)."""
    return reduce(kron, vectors, RVec([1]))


def primitive(v):
    """Rescale `v` by a positive factor to a primitive integer vector."""
    v = RVec(v)
    if v.is_zero():
        return v
    scale = math.lcm(*(x.denominator for x in v))
    ints = [int(x * scale) for x in v]
    g = math.gcd(*ints)
    return RVec(i // g for i in ints)


def _integer_rows(rows):
    out = []
    for row in rows:
        row = [rat(x) for x in row]
        scale = math.lcm(*(x.denominator for x in row))
        out.append([int(x * scale) for x in row])
    return out


def _bareiss(a, ncols):
    """
    Fraction-free row echelon form of the integer rows `a`, in place.

    Returns the pivot positions as (row, column) pairs.
    """
    pivots = []
    prev, r, nrows = 1, 0, len(a)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        pivot = a[r][c]
        for i in range(r + 1, nrows):
            factor = a[i][c]
            for j in range(c + 1, ncols):
                a[i][j] = (pivot * a[i][j] - factor * a[r][j]) // prev
            a[i][c] = 0
        prev = pivot
        pivots.append((r, c))
        r += 1
    return pivots


def _back_substitute(a, pivots, x, rhs=None):
    for r, c in reversed(pivots):
        s = Fraction(a[r][rhs]) if rhs is not None else Fraction(0)
        s -= sum((a[r][j] * x[j] for j in range(c + 1, len(x))), Fraction(0))
        x[c] = s / a[r][c]
    return x


def rank(m):
    """Exact rank of an :class:`RMat`."""
    return len(_bareiss(_integer_rows(m.row_vectors()), m.cols))


def span_dim(vectors):
    """Dimension of the linear span of `vectors`; 0 for the empty list."""
    vectors = [RVec(v) for v in vectors]
    if not vectors:
        return 0
    return rank(RMat.from_rows(vectors))


def solve_linear(m, b):
    """
    An exact solution of ``m x = b`` or None when the system is inconsistent.

    Free variables are set to zero.
    """
    if m.rows != len(b):
        raise DimensionMismatch(
            "matrix has {0} rows, right-hand side has {1}".format(m.rows, len(b)))
    n = m.cols
    rows = _integer_rows(
        [tuple(row) + (rat(b[i]),) for i, row in enumerate(m.row_vectors())])
    pivots = _bareiss(rows, n + 1)
    if any(c == n for _, c in pivots):
        return None
    return RVec(_back_substitute(rows, pivots, [Fraction(0)] * n, rhs=n))


def nullspace(m):
    """A basis of the kernel of `m`, one vector per free column."""
    n = m.cols
    rows = _integer_rows(m.row_vectors())
    pivots = _bareiss(rows, n)
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        x = [Fraction(0)] * n
        x[free] = Fraction(1)
        basis.append(RVec(_back_substitute(rows, pivots, x)))
    return basis
