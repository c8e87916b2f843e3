"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Matrices are immutable
:class:`RatMatrix` values; vectors are plain tuples of Fractions.
"""

from fractions import Fraction
from math import gcd, lcm

from .errors import RankDeficient, Singular

Rat = Fraction


def to_rat(x):
    """Convert an int, Fraction or string like ``'3/4'`` / ``'1.25'`` exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    return Fraction(x)


def vec(xs):
    return tuple(to_rat(x) for x in xs)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _bits(x):
    return x.numerator.bit_length() + x.denominator.bit_length()


class RatMatrix:
    """Dense immutable matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows, ncols=None):
        rows = tuple(vec(r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def from_columns(cls, cols, nrows=None):
        cols = [vec(c) for c in cols]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @classmethod
    def diagonal(cls, entries):
        entries = vec(entries)
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self):
        return RatMatrix(list(zip(*self.rows)) if self.nrows else [], self.nrows)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return RatMatrix([[dot(r, c) for c in cols] for r in self.rows], other.ncols)
        other = tuple(other)
        if len(other) != self.ncols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(dot(r, other) for r in self.rows)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def scale(self, c):
        c = to_rat(c)
        return RatMatrix([[c * a for a in r] for r in self.rows], self.ncols)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def is_square(self):
        return self.nrows == self.ncols

    def is_integral(self):
        return all(a.denominator == 1 for r in self.rows for a in r)

    def is_symmetric(self):
        return self.is_square() and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    def tolist(self):
        return [list(r) for r in self.rows]

    def to_strings(self):
        return [[str(a) for a in r] for r in self.rows]

    def __repr__(self):
        return f"RatMatrix({self.to_strings()})"


def _as_rows(M):
    if isinstance(M, RatMatrix):
        return [list(r) for r in M.rows], M.ncols
    rows = [list(vec(r)) for r in M]
    return rows, (len(rows[0]) if rows else 0)


def rref(M):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where ``rows`` are the nonzero rows of the
    reduced matrix and ``pivots`` their pivot columns.  The pivot row in
    each column is the candidate with the smallest bit size.
    """
    rows, ncols = _as_rows(M)
    pivots = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(rows)):
            x = rows[i][c]
            if x and (best is None or _bits(x) < _bits(rows[best][c])):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(M):
    """Exact rank over the rationals."""
    return len(rref(M)[1])


def invert(M):
    """Exact inverse of a square matrix; raises :class:`Singular`."""
    if not isinstance(M, RatMatrix):
        M = RatMatrix(M)
    if not M.is_square():
        raise ValueError("matrix must be square")
    n = M.nrows
    aug = [list(M.rows[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise Singular("matrix is not invertible")
    return RatMatrix([r[n:] for r in rows], n)


def det(M):
    if not isinstance(M, RatMatrix):
        M = RatMatrix(M)
    if not M.is_square():
        raise ValueError("matrix must be square")
    rows = [list(r) for r in M.rows]
    n = len(rows)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        piv = rows[c][c]
        d *= piv
        for i in range(c + 1, n):
            f = rows[i][c] / piv
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def select_basis(columns):
    """Indices of a basis among ``columns``, chosen greedily left to right.

    ``columns`` is either a RatMatrix (its columns are used) or a sequence
    of vectors.  Raises :class:`RankDeficient` if they do not span.
    """
    if isinstance(columns, RatMatrix):
        cols = columns.columns()
        n = columns.nrows
    else:
        cols = [vec(c) for c in columns]
        n = len(cols[0]) if cols else 0
    basis = []
    # echelon rows kept as (pivot index, row) for incremental independence tests
    echelon = []
    for j, c in enumerate(cols):
        v = list(c)
        for piv, row in echelon:
            f = v[piv]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            continue
        inv = 1 / v[piv]
        echelon.append((piv, [x * inv for x in v]))
        basis.append(j)
        if len(basis) == n:
            return basis
    raise RankDeficient(f"columns span dimension {len(basis)} < {n}")


def solve_homogeneous(A):
    """Basis of the right nullspace ``{x : A x = 0}``; empty if trivial."""
    rows, ncols = _as_rows(A)
    if isinstance(A, RatMatrix):
        ncols = A.ncols
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(A, b):
    """One solution of ``A x = b`` or ``None`` if inconsistent."""
    rows, ncols = _as_rows(A)
    b = vec(b)
    aug = [r + [bi] for r, bi in zip(rows, b)]
    red, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


def coordinates(basis_vectors, v):
    """Coefficients of ``v`` in the given basis (columns); ``None`` if outside the span."""
    M = RatMatrix.from_columns(basis_vectors, len(v))
    return solve(M, v)


def primitive(v):
    """Positive rescaling of a rational vector to a primitive integer vector."""
    v = vec(v)
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def common_denominator(vectors):
    den = 1
    for v in vectors:
        for x in v:
            den = lcm(den, Fraction(x).denominator)
    return den


def integer_nullspace_vector(rows):
    """A primitive integer vector spanning the nullspace of an integer matrix
    whose nullspace is one-dimensional, or ``None`` otherwise."""
    ns = solve_homogeneous(rows)
    if len(ns) != 1:
        return None
    return primitive(ns[0])


def hermite_normal_form(rows):
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows of the unique echelon basis of the row
    lattice: pivots positive, entries above each pivot reduced into
    ``[0, pivot)``.
    """
    A = [[int(x) for x in r] for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        # gcd-combine column c of rows r.. into row r
        for i in range(r + 1, len(A)):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, x, y = _xgcd(a, b)
            ra, rb = A[r], A[i]
            A[r] = [x * u + y * w for u, w in zip(ra, rb)]
            A[i] = [(a // g) * w - (b // g) * u for u, w in zip(ra, rb)]
        if r < len(A) and A[r][c] != 0:
            if A[r][c] < 0:
                A[r] = [-u for u in A[r]]
            piv = A[r][c]
            for i in range(r):
                q = A[i][c] // piv
                if q:
                    A[i] = [u - q * w for u, w in zip(A[i], A[r])]
            r += 1
            if r == len(A):
                break
    return [tuple(row) for row in A[:r]]


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
