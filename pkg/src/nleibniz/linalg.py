"""Exact rational scalars, dense matrices and the decompositions built on them.

Scalars are :class:`fractions.Fraction`.  Vectors are plain tuples of
fractions.  :class:`RatMatrix` is an immutable dense row-major matrix.
Operators acting on a module are stored in the column convention:
``M @ e_l`` is column ``l`` of ``M``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import chain
from typing import Iterable, Sequence

from .errors import Inconsistent, NotSymmetric

Rational = Fraction
Vector = tuple

_RATIONAL_RE = re.compile(r"-?[0-9]+(/[0-9]+)?")

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` with an optional leading ``-`` and no whitespace."""
    if not isinstance(text, str) or _RATIONAL_RE.fullmatch(text) is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def render_rational(q) -> str:
    return str(Fraction(q))


def as_vector(values: Iterable) -> tuple:
    return tuple(Fraction(v) for v in values)


def basis_vector(dim: int, i: int) -> tuple:
    return tuple(ONE if k == i else ZERO for k in range(dim))


def zero_vector(dim: int) -> tuple:
    return (ZERO,) * dim


def vadd(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), ZERO)


class RatMatrix:
    """Immutable dense matrix of fractions."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(Fraction(x) for x in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, chain.from_iterable(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        return cls.from_rows(list(zip(*columns)), len(columns)) if columns else cls.zeros(rows, 0)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, (ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        return cls(n, n, (values[i] if i == j else ZERO for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         (self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def vec(self) -> tuple:
        """Row-major flattening."""
        return self.entries

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def _check_same_shape(self, other):
        if not isinstance(other, RatMatrix) or other.shape != self.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {getattr(other, 'shape', None)}")

    def __add__(self, other):
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols, map(Fraction.__add__, self.entries, other.entries))

    def __sub__(self, other):
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols, map(Fraction.__sub__, self.entries, other.entries))

    def __neg__(self):
        return RatMatrix(self.rows, self.cols, (-x for x in self.entries))

    def __mul__(self, scalar):
        if isinstance(scalar, RatMatrix):
            return NotImplemented
        c = Fraction(scalar)
        return RatMatrix(self.rows, self.cols, (c * x for x in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.col(j) for j in range(other.cols)]
            return RatMatrix(self.rows, other.cols,
                             (dot(self.row(i), c) for i in range(self.rows) for c in cols))
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for a {self.shape} matrix")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.rows, self.cols, self.entries))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def commutator(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    return a @ b - b @ a


def _rref_rows(rows: list, ncols: int) -> tuple:
    """In-place Gauss-Jordan on a list of lists; first nonzero entry is the pivot."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = ONE / prow[c]
        if inv != 1:
            for k in range(c, ncols):
                prow[k] *= inv
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for k in range(c, ncols):
                        if prow[k]:
                            row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: RatMatrix) -> tuple:
    """Reduced row echelon form: ``(R, pivot_columns, rank)``."""
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    return RatMatrix(m.rows, m.cols, chain.from_iterable(rows)), pivots, len(pivots)


def rank(m: RatMatrix) -> int:
    return rref(m)[2]


def nullspace(m: RatMatrix) -> list:
    """Canonical basis of ``{v : m v = 0}`` read off the RREF, one vector per free column."""
    r, pivots, _ = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [ZERO] * m.cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(tuple(v))
    return basis


def solve(m: RatMatrix, b: Sequence) -> tuple:
    """Return some ``x`` with ``m x = b``; free variables are set to zero.

    Raises :class:`Inconsistent` when ``b`` is outside the column space.
    """
    if len(b) != m.rows:
        raise ValueError(f"right-hand side of length {len(b)} for {m.rows} rows")
    rows = [list(m.row(i)) + [Fraction(b[i])] for i in range(m.rows)]
    rows, pivots = _rref_rows(rows, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        raise Inconsistent("linear system has no solution")
    x = [ZERO] * m.cols
    for i, p in enumerate(pivots):
        x[p] = rows[i][m.cols]
    return tuple(x)


def inverse(m: RatMatrix) -> RatMatrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    rows = [list(m.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    rows, pivots = _rref_rows(rows, 2 * n)
    if pivots[:n] != list(range(n)):
        raise Inconsistent("matrix is singular")
    return RatMatrix(n, n, chain.from_iterable(row[n:] for row in rows))


def coordinates(basis: Sequence[Sequence], targets: Sequence[Sequence]) -> list:
    """Express every target in terms of linearly independent ``basis`` vectors.

    One RREF of ``[B | targets]`` serves all targets.  Raises
    :class:`Inconsistent` if some target is outside the span.
    """
    m = len(basis)
    if not targets:
        return []
    length = len(targets[0])
    if m == 0:
        for t in targets:
            if any(t):
                raise Inconsistent("target outside the zero span")
        return [() for _ in targets]
    ncols = m + len(targets)
    rows = [[basis[a][i] for a in range(m)] + [t[i] for t in targets] for i in range(length)]
    rows, pivots = _rref_rows(rows, ncols)
    if pivots[:m] != list(range(m)):
        raise ValueError("basis vectors are linearly dependent")
    if len(pivots) > m:
        bad = pivots[m] - m
        raise Inconsistent(f"target {bad} is outside the span")
    return [tuple(rows[a][m + j] for a in range(m)) for j in range(len(targets))]


class EchelonSpan:
    """Incrementally grown span, kept fully reduced so membership is one pass."""

    def __init__(self, length: int):
        self.length = length
        self._rows: list = []
        self._pivots: list = []

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> list:
        v = list(v)
        for p, row in zip(self._pivots, self._rows):
            f = v[p]
            if f:
                for k, x in enumerate(row):
                    if x:
                        v[k] -= f * x
        return v

    def rows(self) -> list:
        return [list(r) for r in self._rows]

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        r = self.reduce(v)
        p = next((k for k, x in enumerate(r) if x), None)
        if p is None:
            return False
        inv = ONE / r[p]
        r = [x * inv for x in r]
        for row in self._rows:
            f = row[p]
            if f:
                for k, x in enumerate(r):
                    if x:
                        row[k] -= f * x
        self._rows.append(r)
        self._pivots.append(p)
        return True


def signature(m: RatMatrix) -> tuple:
    """Inertia ``(positive, negative, zero)`` by rational congruence diagonalization."""
    if not m.is_symmetric():
        raise NotSymmetric("signature requires a symmetric matrix")
    n = m.rows
    a = m.to_rows()

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    diag = []
    for k in range(n):
        if not a[k][k]:
            i = next((i for i in range(k + 1, n) if a[i][i]), None)
            if i is None:
                pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j]), None)
                if pair is None:
                    diag.extend([ZERO] * (n - k))
                    break
                i, j = pair
                # congruence: row/col i += row/col j, so a[i][i] becomes 2 a[i][j]
                for c in range(n):
                    a[i][c] += a[j][c]
                for r in range(n):
                    a[r][i] += a[r][j]
            swap(i, k)
        piv = a[k][k]
        for r in range(k + 1, n):
            f = a[r][k] / piv
            if f:
                for c in range(k, n):
                    a[r][c] -= f * a[k][c]
                for c in range(k, n):
                    a[c][r] = a[r][c]
        diag.append(piv)
    pos = sum(1 for x in diag if x > 0)
    neg = sum(1 for x in diag if x < 0)
    return pos, neg, n - pos - neg
