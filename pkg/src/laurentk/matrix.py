"""Matrices over the Laurent ring and their Smith normal form.

Matrices are plain ``list[list[LaurentPoly]]`` (row-major).  ``m x 0`` and
``0 x n`` shapes are legal; a matrix with zero rows carries its column count
separately where it matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch
from .laurent import ONE, ZERO, LaurentPoly, canonical_associate, exact_div, laurent_divmod

Matrix = list  # list[list[LaurentPoly]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[LaurentPoly.coerce(x) for x in row] for row in rows]


def zeros(m: int, n: int) -> Matrix:
    return [[ZERO] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def shape(A: Matrix, ncols: int | None = None) -> tuple[int, int]:
    if not A:
        return 0, (ncols or 0)
    return len(A), len(A[0])


def matmul(A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    """Product; ``inner`` is only needed when ``A`` has no rows or ``B`` no rows."""
    m = len(A)
    k = len(A[0]) if A else (inner or 0)
    if len(B) != k:
        raise DimensionMismatch(f"cannot multiply {m}x{k} by {len(B)}x?")
    n = len(B[0]) if B else 0
    out = []
    for i in range(m):
        row = []
        Ai = A[i]
        for j in range(n):
            s = ZERO
            for t in range(k):
                a = Ai[t]
                if a:
                    b = B[t][j]
                    if b:
                        s = s + a * b
            row.append(s)
        out.append(row)
    return out


def matvec(A: Matrix, v: Sequence[LaurentPoly]) -> list[LaurentPoly]:
    if A and len(A[0]) != len(v):
        raise DimensionMismatch(f"cannot apply {len(A)}x{len(A[0])} matrix to vector of length {len(v)}")
    out = []
    for row in A:
        s = ZERO
        for a, b in zip(row, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    m, n = shape(A, ncols)
    return [[A[i][j] for i in range(m)] for j in range(n)]


def add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_pow(A: Matrix, k: int) -> Matrix:
    result = identity(len(A))
    base = A
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def trace(A: Matrix) -> LaurentPoly:
    s = ZERO
    for i in range(len(A)):
        s = s + A[i][i]
    return s


def block_diag(*blocks: tuple[Matrix, int, int]) -> Matrix:
    """Block-diagonal matrix from ``(block, rows, cols)`` triples."""
    m = sum(b[1] for b in blocks)
    n = sum(b[2] for b in blocks)
    out = zeros(m, n)
    r = c = 0
    for B, bm, bn in blocks:
        for i in range(bm):
            for j in range(bn):
                out[r + i][c + j] = B[i][j]
        r += bm
        c += bn
    return out


def det(A: Matrix) -> LaurentPoly:
    """Determinant by fraction-free (Bareiss) elimination with exact division."""
    n = len(A)
    if n == 0:
        return ONE
    if any(len(row) != n for row in A):
        raise DimensionMismatch("determinant of a non-square matrix")
    M = [list(row) for row in A]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return ZERO
        p = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = exact_div(M[i][j] * p - M[i][k] * M[k][j], prev)
        prev = p
    d = M[n - 1][n - 1]
    return -d if sign < 0 else d


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal in a divisibility chain.

    ``U_inv`` and ``V_inv`` are tracked alongside so that callers can change
    basis in both directions without inverting anything afterwards.
    Nonzero diagonal entries are canonical generators.
    """

    U: Matrix
    D: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix
    rows: int
    cols: int

    @property
    def diagonal(self) -> list[LaurentPoly]:
        return [self.D[i][i] for i in range(min(self.rows, self.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


class _SNF:
    def __init__(self, A: Matrix, m: int, n: int):
        self.A = [list(r) for r in A]
        self.m, self.n = m, n
        self.U, self.Ui = identity(m), identity(m)
        self.V, self.Vi = identity(n), identity(n)

    # row operations act on A and U from the left, on U_inv from the right
    def swap_rows(self, i, j):
        if i == j:
            return
        for M in (self.A, self.U):
            M[i], M[j] = M[j], M[i]
        for row in self.Ui:
            row[i], row[j] = row[j], row[i]

    def add_row(self, i, j, c):
        """row_i += c * row_j"""
        if not c:
            return
        for M in (self.A, self.U):
            Mi, Mj = M[i], M[j]
            for k in range(len(Mi)):
                if Mj[k]:
                    Mi[k] = Mi[k] + c * Mj[k]
        for row in self.Ui:
            if row[i]:
                row[j] = row[j] - c * row[i]

    def scale_row(self, i, u):
        inv = u.inverse_unit()
        for M in (self.A, self.U):
            M[i] = [x * u for x in M[i]]
        for row in self.Ui:
            row[i] = row[i] * inv

    # column operations act on A and V from the right, on V_inv from the left
    def swap_cols(self, i, j):
        if i == j:
            return
        for M in (self.A, self.V):
            for row in M:
                row[i], row[j] = row[j], row[i]
        self.Vi[i], self.Vi[j] = self.Vi[j], self.Vi[i]

    def add_col(self, i, j, c):
        """col_i += c * col_j"""
        if not c:
            return
        for M in (self.A, self.V):
            for row in M:
                if row[j]:
                    row[i] = row[i] + c * row[j]
        Vi, Vj = self.Vi[i], self.Vi[j]
        for k in range(len(Vj)):
            if Vi[k]:
                Vj[k] = Vj[k] - c * Vi[k]

    def _min_entry(self, cells):
        best = None
        for i, j in cells:
            a = self.A[i][j]
            if a and (best is None or a.span < best[0]):
                best = (a.span, i, j)
        return best

    def run(self) -> SmithForm:
        A, m, n = self.A, self.m, self.n
        for t in range(min(m, n)):
            best = self._min_entry((i, j) for i in range(t, m) for j in range(t, n))
            if best is None:
                break
            _, i, j = best
            self.swap_rows(t, i)
            self.swap_cols(t, j)
            while True:
                p = A[t][t]
                dirty = False
                for i in range(t + 1, m):
                    if A[i][t]:
                        q, _ = laurent_divmod(A[i][t], p)
                        self.add_row(i, t, -q)
                        dirty = dirty or bool(A[i][t])
                for j in range(t + 1, n):
                    if A[t][j]:
                        q, _ = laurent_divmod(A[t][j], p)
                        self.add_col(j, t, -q)
                        dirty = dirty or bool(A[t][j])
                if dirty:
                    # a remainder of smaller span becomes the new pivot
                    cells = [(i, t) for i in range(t + 1, m)] + [(t, j) for j in range(t + 1, n)]
                    _, i, j = self._min_entry(cells)
                    self.swap_rows(t, i)
                    self.swap_cols(t, j)
                    continue
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] and laurent_divmod(A[i][j], p)[1]), None)
                if bad is None:
                    break
                self.add_row(t, bad[0], ONE)
        for t in range(min(m, n)):
            d = A[t][t]
            if d:
                unit = exact_div(d, canonical_associate(d))
                if unit != ONE:
                    self.scale_row(t, unit.inverse_unit())
        return SmithForm(self.U, A, self.V, self.Ui, self.Vi, m, n)


def smith_form(A: Matrix, ncols: int | None = None) -> SmithForm:
    """Smith normal form over Q[X, X^-1] with both change-of-basis inverses.

    Pivot rule: nonzero entry of least span, ties broken row-major.  Each
    pass either strictly lowers the pivot span or clears its row and
    column, so the loop terminates.
    """
    m, n = shape(A, ncols)
    return _SNF(A, m, n).run()


def smith_normal_form(A: Matrix, ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ A @ V == D``."""
    s = smith_form(A, ncols)
    return s.U, s.D, s.V
