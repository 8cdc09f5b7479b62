"""Exact integer and rational matrix arithmetic.

Everything here works on Python ints and :class:`fractions.Fraction`; no
floating point is used anywhere.  Matrices are immutable and may have zero
rows or zero columns (an empty link or a genus-0 surface produces such
blocks, and every formula has to flow through them unchanged).
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class LinalgError(ValueError):
    """Raised for shape errors and singular inputs."""


class SingularMatrixError(LinalgError):
    """Raised when an operation needs a nonsingular matrix."""


class InvariantViolation(RuntimeError):
    """An identity that must hold by construction failed (a bug, not bad input)."""


class Matrix:
    """Immutable dense matrix with exact entries.

    Use :class:`IntMatrix` or :class:`RatMatrix`; this base only holds the
    shared arithmetic.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable] = (), rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(self._coerce(x) for x in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows and not (len(data) == 0 and cols == 0):
            raise LinalgError(f"expected {rows} rows, got {len(data)}")
        if len(data) == 0 and rows:
            data = tuple(() for _ in range(rows))
        for row in data:
            if len(row) != cols:
                raise LinalgError(f"ragged row: expected {cols} entries, got {len(row)}")
        self.rows = rows
        self.cols = cols
        self._data = data

    @staticmethod
    def _coerce(x):
        raise NotImplementedError

    @classmethod
    def _wrap(cls, data, rows: int, cols: int):
        # trusted constructor: data is already a list of rows of coerced entries
        obj = cls.__new__(cls)
        obj.rows = rows
        obj.cols = cols
        obj._data = tuple(map(tuple, data)) if data else tuple(() for _ in range(rows))
        return obj

    # construction helpers

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diagonal(cls, values: Sequence):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence):
        """Build from a flat row-major entry list."""
        if len(entries) != rows * cols:
            raise LinalgError(f"{rows}x{cols} matrix needs {rows * cols} entries")
        return cls([entries[i * cols:(i + 1) * cols] for i in range(rows)], rows, cols)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self._data for x in row)

    def tolist(self) -> list[list]:
        return [list(row) for row in self._data]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self._data)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        d = self._data
        return all(d[i][j] == d[j][i] for i in range(self.rows) for j in range(i))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    def is_integral(self) -> bool:
        return all(Fraction(x).denominator == 1 for row in self._data for x in row)

    # arithmetic

    @property
    def T(self):
        return type(self)._wrap([self.col(j) for j in range(self.cols)], self.cols, self.rows)

    def _result_type(self, other):
        if isinstance(self, RatMatrix) or isinstance(other, RatMatrix):
            return RatMatrix
        return IntMatrix

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __add__(self, other: Matrix):
        if self.shape != other.shape:
            raise LinalgError(f"cannot add {self.shape} and {other.shape}")
        return self._result_type(other)._wrap(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.rows, self.cols)

    def __sub__(self, other: Matrix):
        if self.shape != other.shape:
            raise LinalgError(f"cannot subtract {other.shape} from {self.shape}")
        return self._result_type(other)._wrap(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.rows, self.cols)

    def __neg__(self):
        return type(self)._wrap([[-a for a in r] for r in self._data], self.rows, self.cols)

    def scale(self, c):
        cls = RatMatrix if isinstance(c, Fraction) and c.denominator != 1 else type(self)
        return cls([[c * a for a in r] for r in self._data], self.rows, self.cols)

    def __matmul__(self, other: Matrix):
        if self.cols != other.rows:
            raise LinalgError(f"cannot multiply {self.shape} by {other.shape}")
        cls = self._result_type(other)
        cols = [other.col(j) for j in range(other.cols)]
        out = [[sum(map(operator.mul, r, c)) for c in cols] for r in self._data]
        if cls is RatMatrix:
            out = [[Fraction(x) for x in row] for row in out]
        return cls._wrap(out, self.rows, other.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        return type(self)._wrap([[self._data[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def __repr__(self):
        return f"{type(self).__name__}({self.tolist()!r}, rows={self.rows}, cols={self.cols})"


class IntMatrix(Matrix):
    """Matrix of arbitrary-precision integers."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        if hasattr(x, "__index__"):
            return x.__index__()
        raise LinalgError(f"not an integer entry: {x!r}")


class RatMatrix(Matrix):
    """Matrix of exact rationals (entries always stored in lowest terms)."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, float):
            raise LinalgError("floating point entries are not accepted")
        return Fraction(x)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise LinalgError("matrix has non-integral entries")
        return IntMatrix(self._data, self.rows, self.cols)


def block(grid: Sequence[Sequence[Matrix]]):
    """Assemble a block matrix from a grid of blocks with compatible shapes."""
    if not grid:
        return IntMatrix.zeros(0, 0)
    heights = [row[0].rows for row in grid]
    widths = [m.cols for m in grid[0]]
    rat = False
    for bi, brow in enumerate(grid):
        if len(brow) != len(widths):
            raise LinalgError("block grid is ragged")
        for bj, m in enumerate(brow):
            if m.shape != (heights[bi], widths[bj]):
                raise LinalgError(
                    f"block ({bi},{bj}) has shape {m.shape}, expected {(heights[bi], widths[bj])}")
            rat = rat or isinstance(m, RatMatrix)
    out = []
    for brow, h in zip(grid, heights):
        for i in range(h):
            out.append([x for m in brow for x in m.row(i)])
    cls = RatMatrix if rat else IntMatrix
    if rat:
        out = [[Fraction(x) for x in row] for row in out]
    return cls._wrap(out, sum(heights), sum(widths))


def block_diag(*mats: Matrix):
    n = len(mats)
    grid = [[mats[i] if i == j else IntMatrix.zeros(mats[i].rows, mats[j].cols)
             for j in range(n)] for i in range(n)]
    return block(grid)


def hstack(*mats: Matrix):
    return block([list(mats)])


def vstack(*mats: Matrix):
    return block([[m] for m in mats])


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.factors if d != 0)


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """Smith normal form by repeated smallest-pivot elimination.

    The pivot is the nonzero entry of least absolute value in the remaining
    submatrix, ties going to the lowest (row, col).  ``factors`` lists the
    diagonal of ``S`` (length ``min(rows, cols)``): nonnegative, each nonzero
    one dividing the next, zeros last.
    """
    m, n = M.shape
    S = M.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        if i != j:
            S[i], S[j] = S[j], S[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for R in (S, V):
                for row in R:
                    row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row dst += c * row src
        S[dst] = [a + c * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for R in (S, V):
            for row in R:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = S[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // p
                    add_row(i, t, -q)
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // p
                    add_col(j, t, -q)
                    dirty = dirty or S[t][j] != 0
            if dirty:
                continue
            # pivot row/column are clear; enforce divisibility on the rest
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]

    factors = tuple(S[i][i] for i in range(min(m, n)))
    return SmithDecomposition(IntMatrix._wrap(U, m, m), IntMatrix._wrap(S, m, n),
                              IntMatrix._wrap(V, n, n), factors)


def invariant_factors(M: IntMatrix) -> tuple[int, ...]:
    return smith_normal_form(M).factors


# ---------------------------------------------------------------------------
# determinant, inverse, solving


def determinant(M: Matrix) -> int | Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.  ``det`` of 0x0 is 1."""
    if not M.is_square():
        raise LinalgError(f"determinant of non-square {M.shape} matrix")
    n = M.rows
    if n == 0:
        return 1
    if isinstance(M, RatMatrix):
        # clear denominators, then divide back out
        den = math.lcm(*(x.denominator for x in M.entries))
        d = determinant(IntMatrix([[int(x * den) for x in r] for r in M], n, n))
        return Fraction(d, den ** n)
    a = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _bareiss_solve(A: list[list[int]], B: list[list[int]]) -> tuple[int, list[list[int]]]:
    """Return ``(d, X)`` with ``A X = d B`` and ``d = ±det A``, all in integers.

    Fraction-free forward elimination on ``[A | B]`` followed by exact
    integer back-substitution.  Raises on singular ``A``.
    """
    n = len(A)
    k = len(B[0]) if B else 0
    a = [list(A[i]) + list(B[i]) for i in range(n)]
    w = n + k
    sign = 1
    prev = 1
    for c in range(n):
        if a[c][c] == 0:
            piv = next((i for i in range(c + 1, n) if a[i][c] != 0), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        acc = a[c][c]
        rc = a[c]
        for i in range(c + 1, n):
            ri = a[i]
            aic = ri[c]
            for j in range(c + 1, w):
                ri[j] = (ri[j] * acc - aic * rc[j]) // prev
            ri[c] = 0
        prev = acc
    det = a[n - 1][n - 1] if n else 1
    # U X = det * B' has an integral solution (Cramer), so the divisions are exact
    X = [[0] * k for _ in range(n)]
    for col in range(k):
        for i in range(n - 1, -1, -1):
            ri = a[i]
            t = det * ri[n + col] - sum(ri[j] * X[j][col] for j in range(i + 1, n))
            X[i][col] = t // ri[i]
    return det, X


def solve_rational(A: Matrix, b) -> RatMatrix:
    """Solve ``A x = b`` exactly.

    ``b`` may be a column given as a flat sequence or a matrix with several
    right-hand-side columns; the result has the same number of columns.
    """
    if not A.is_square():
        raise LinalgError(f"solve needs a square matrix, got {A.shape}")
    if not isinstance(b, Matrix):
        b = RatMatrix([[x] for x in b], len(b), 1)
    if b.rows != A.rows:
        raise LinalgError(f"right-hand side has {b.rows} rows, expected {A.rows}")
    n, k = A.rows, b.cols
    if n == 0:
        return RatMatrix.zeros(0, k)
    # clear denominators row by row so everything is integral
    Ai, Bi = [], []
    for i in range(n):
        row = [Fraction(x) for x in A.row(i)] + [Fraction(x) for x in b.row(i)]
        den = math.lcm(*(x.denominator for x in row))
        Ai.append([int(x * den) for x in row[:n]])
        Bi.append([int(x * den) for x in row[n:]])
    det, X = _bareiss_solve(Ai, Bi)
    return RatMatrix._wrap([[Fraction(x, det) for x in row] for row in X], n, k)


def rank(M: Matrix) -> int:
    """Rank over Q by fraction-free elimination."""
    a = [[Fraction(x) for x in row] for row in M] if isinstance(M, RatMatrix) else M.tolist()
    if isinstance(M, RatMatrix):
        a = [[int(x * math.lcm(*(y.denominator for y in row))) for x in row] for row in a]
    m, n = M.rows, M.cols
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        p = pr[c]
        for i in range(r + 1, m):
            f = a[i][c]
            if f:
                ri = [x * p - f * y for x, y in zip(a[i], pr)]
                g = math.gcd(*ri)
                a[i] = [x // g for x in ri] if g > 1 else ri
        r += 1
        if r == m:
            break
    return r


def invert_rational(A: Matrix) -> RatMatrix:
    """Exact inverse over the rationals.

    Raises :class:`SingularMatrixError` when ``det A == 0``; for a linking
    matrix that means the data does not describe a rational homology sphere
    filling.
    """
    if not A.is_square():
        raise LinalgError(f"inverse of non-square {A.shape} matrix")
    try:
        return solve_rational(A, IntMatrix.identity(A.rows))
    except SingularMatrixError:
        raise SingularMatrixError("singular linking matrix: not a Q-cobordism datum") from None


# ---------------------------------------------------------------------------
# signature


@dataclass(frozen=True)
class SignatureTriple:
    pos: int
    zero: int
    neg: int

    @property
    def dim(self) -> int:
        return self.pos + self.zero + self.neg

    def __iter__(self):
        return iter((self.pos, self.zero, self.neg))


def signature_symmetric(M: Matrix) -> SignatureTriple:
    """Inertia of a symmetric matrix by exact congruence diagonalization.

    When the current diagonal pivot vanishes but its row does not, a row and
    column with a nonzero off-diagonal entry is added to it (with sign chosen
    so the new pivot is nonzero), which is a valid congruence in
    characteristic 0.
    """
    if not M.is_symmetric():
        raise LinalgError("signature needs a symmetric matrix")
    n = M.rows
    a = [[Fraction(x) for x in row] for row in M]
    pos = neg = zero = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
            if j is None:
                zero += 1
                continue
            eps = 1 if 2 * a[k][j] + a[j][j] != 0 else -1
            # row k += eps * row j, then col k += eps * col j
            for c in range(k, n):
                a[k][c] += eps * a[j][c]
            for r in range(k, n):
                a[r][k] += eps * a[r][j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        rk = a[k]
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                ri = a[i]
                for j in range(k + 1, n):
                    ri[j] -= f * rk[j]
                ri[k] = Fraction(0)
        for j in range(k + 1, n):
            rk[j] = Fraction(0)
    return SignatureTriple(pos, zero, neg)
