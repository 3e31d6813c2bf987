"""Dense exact linear algebra over the scalar field.

Dimensions in this engine are tiny (at most a few hundred), so everything is
straight Gaussian elimination with a fixed deterministic pivot rule: leftmost
column, first row whose entry is exactly nonzero.  No fraction-free tricks,
no numerical concerns — the field is exact.
"""

from __future__ import annotations

from .errors import InconsistentSystemError, QlieError
from .scalars import Scalar, ScalarContext


class Matrix:
    """Immutable dense matrix of Scalars (row-major)."""

    __slots__ = ("ctx", "rows", "cols", "entries")

    def __init__(self, ctx: ScalarContext, entries: list[list[Scalar]]):
        self.ctx = ctx
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != self.cols:
                raise QlieError("ragged matrix")
            for x in row:
                if x.ctx is not ctx:
                    raise QlieError("matrix entry from foreign scalar context")
        self.entries = [list(row) for row in entries]

    @staticmethod
    def zero(ctx: ScalarContext, rows: int, cols: int) -> "Matrix":
        z = ctx.zero()
        return Matrix(ctx, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(ctx: ScalarContext, n: int) -> "Matrix":
        z, o = ctx.zero(), ctx.one()
        return Matrix(ctx, [[o if i == j else z for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> list[Scalar]:
        return list(self.entries[i])

    def col(self, j: int) -> list[Scalar]:
        return [self.entries[i][j] for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.ctx,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise QlieError("shape mismatch in matrix product")
        z = self.ctx.zero()
        out = []
        for i in range(self.rows):
            row = []
            ri = self.entries[i]
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    x = ri[k]
                    if x.is_zero():
                        continue
                    acc = acc + x * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(self.ctx, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise QlieError("shape mismatch in matrix sum")
        return Matrix(
            self.ctx,
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix(
            self.ctx, [[c * x for x in row] for row in self.entries]
        )

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def apply(self, vec: list[Scalar]) -> list[Scalar]:
        if len(vec) != self.cols:
            raise QlieError("vector length mismatch")
        out = []
        for i in range(self.rows):
            acc = self.ctx.zero()
            for k, x in enumerate(self.entries[i]):
                if not x.is_zero() and not vec[k].is_zero():
                    acc = acc + x * vec[k]
            out.append(acc)
        return out

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise QlieError("trace of a non-square matrix")
        acc = self.ctx.zero()
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc


def _echelon(ctx, rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices).

    Pivot rule: for each column left to right, the first remaining row with an
    exactly nonzero entry.  Pivots are normalized to 1 and cleared above and
    below, so the result is canonical.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot column list (canonical)."""
    rows, pivots = _echelon(m.ctx, m.entries)
    return Matrix(m.ctx, rows) if rows else m, pivots


def rank(m: Matrix) -> int:
    _, pivots = _echelon(m.ctx, m.entries)
    return len(pivots)


def kernel(m: Matrix) -> list[list[Scalar]]:
    """Basis of the right kernel.  Each vector is canonical: entries in
    reduced form, first nonzero entry normalized to 1."""
    ctx = m.ctx
    rows, pivots = _echelon(ctx, m.entries)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    z, o = ctx.zero(), ctx.one()
    for fc in free:
        vec = [z] * m.cols
        vec[fc] = o
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        # normalize first nonzero entry to 1
        lead = next(x for x in vec if not x.is_zero())
        if lead != o:
            inv = lead.inverse()
            vec = [x * inv for x in vec]
        basis.append(vec)
    return basis


def solve(m: Matrix, rhs: list[Scalar]) -> list[Scalar]:
    """One exact solution of m*x = rhs (deterministic under the fixed pivot
    rule; free variables are set to zero).  Raises InconsistentSystemError
    with a certificate row when there is none."""
    if len(rhs) != m.rows:
        raise QlieError("rhs length mismatch")
    ctx = m.ctx
    aug = [m.entries[i] + [rhs[i]] for i in range(m.rows)]
    rows, pivots = _echelon(ctx, aug)
    # a pivot in the last (rhs) column certifies inconsistency
    if m.cols in pivots:
        bad = pivots.index(m.cols)
        raise InconsistentSystemError(bad)
    x = [ctx.zero()] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][m.cols]
    return x


def solve_matrix(m: Matrix, rhs: Matrix) -> Matrix:
    """Solve m*X = rhs column by column."""
    cols = [solve(m, rhs.col(j)) for j in range(rhs.cols)]
    return Matrix(m.ctx, [[cols[j][i] for j in range(rhs.cols)] for i in range(m.cols)])


def invert(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise QlieError("inverse of a non-square matrix")
    if rank(m) != m.rows:
        raise QlieError("matrix is singular")
    return solve_matrix(m, Matrix.identity(m.ctx, m.rows))
