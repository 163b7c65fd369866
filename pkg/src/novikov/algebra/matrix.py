"""Dense matrices over exact rings, and rank computations.

Two independent rank routes live here.  ``gaussian_rank`` is classical
elimination over a field.  ``rank_fraction_free`` is Bareiss elimination
over an integral domain (Laurent polynomials, or a field) and also returns
a nonzero maximal minor that witnesses the rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .laurent import LaurentPoly


class Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Sequence], nrows: int | None = None, ncols: int | None = None):
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows) if nrows is None else nrows
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if len(self.rows) != self.nrows or any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, nrows: int, ncols: int, zero=Fraction(0)) -> Matrix:
        return cls([[zero] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], n, n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def __hash__(self):
        return hash(self.rows)

    def map(self, f: Callable) -> Matrix:
        return Matrix([[f(x) for x in r] for r in self.rows], self.nrows, self.ncols)

    def transpose(self) -> Matrix:
        return Matrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                      self.ncols, self.nrows)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.nrows, self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.nrows, self.ncols)

    def scale(self, c) -> Matrix:
        return self.map(lambda x: c * x)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [[other.rows[k][j] for k in range(other.nrows)] for j in range(other.ncols)]
        out = []
        for r in self.rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for col in cols:
                acc = None
                for k, x in nz:
                    y = col[k]
                    if y:
                        acc = x * y if acc is None else acc + x * y
                row.append(Fraction(0) if acc is None else acc)
            out.append(row)
        return Matrix(out, self.nrows, other.ncols)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def nonzero_rows(self) -> list[int]:
        return [i for i, r in enumerate(self.rows) if any(r)]

    def __repr__(self) -> str:
        return f"Matrix({[[str(x) for x in r] for r in self.rows]})"


def kron(a: Matrix, b: Matrix) -> Matrix:
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([x * y for x in ra for y in rb])
    return Matrix(rows, a.nrows * b.nrows, a.ncols * b.ncols)


def block_matrix(blocks: Sequence[Sequence[Matrix]], d: int, zero=Fraction(0)) -> Matrix:
    """Assemble an (R*d) x (C*d) matrix from an R x C grid of d x d blocks (None = zero)."""
    R = len(blocks)
    C = len(blocks[0]) if R else 0
    rows = [[zero] * (C * d) for _ in range(R * d)]
    for i, brow in enumerate(blocks):
        for j, blk in enumerate(brow):
            if blk is None:
                continue
            for a in range(d):
                for b in range(d):
                    rows[i * d + a][j * d + b] = blk.rows[a][b]
    return Matrix(rows, R * d, C * d)


def inverse(m: Matrix) -> Matrix:
    """Inverse over a field by Gauss-Jordan; raises ValueError when singular."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("only square matrices are invertible")
    one = Fraction(1)
    a = [list(r) + [one if i == j else Fraction(0) for j in range(n)] for i, r in enumerate(m.rows)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            raise ValueError("singular matrix")
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return Matrix([r[n:] for r in a], n, n)


def gaussian_rank(m: Matrix) -> int:
    """Rank over a field by classical row reduction with division."""
    a = [list(r) for r in m.rows]
    rank = 0
    for c in range(m.ncols):
        p = next((i for i in range(rank, m.nrows) if a[i][c]), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        piv = a[rank][c]
        for i in range(rank + 1, m.nrows):
            if a[i][c]:
                f = a[i][c] / piv
                row_r = a[rank]
                a[i] = [x - f * y if k >= c else x for k, (x, y) in enumerate(zip(a[i], row_r))]
        rank += 1
        if rank == m.nrows:
            break
    return rank


def _weight(x) -> int:
    if isinstance(x, LaurentPoly):
        return x.total_degree()
    return 0


@dataclass(frozen=True)
class BareissResult:
    rank: int
    minor: object
    rows: tuple[int, ...]
    cols: tuple[int, ...]


def clear_laurent_rows(m: Matrix) -> Matrix:
    """Multiply each row by a monomial so every entry is an honest polynomial."""
    out = []
    for r in m.rows:
        polys = [x for x in r if isinstance(x, LaurentPoly) and x]
        if not polys:
            out.append(r)
            continue
        k = polys[0].nvars
        shift = tuple(-min(p.min_exponents()[j] for p in polys) for j in range(k))
        out.append([x.shift(shift) if isinstance(x, LaurentPoly) else x for x in r])
    return Matrix(out, m.nrows, m.ncols)


def bareiss(m: Matrix, one=None) -> BareissResult:
    """Fraction-free elimination with full pivoting on minimal total degree.

    The last pivot is, up to the tracked sign, the determinant of the
    submatrix on the returned rows and columns.
    """
    if one is None:
        one = _one_like(m)
    a = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    row_perm = list(range(nr))
    col_perm = list(range(nc))
    prev = one
    k = 0
    while k < min(nr, nc):
        best = None
        for i in range(k, nr):
            ri = a[i]
            for j in range(k, nc):
                x = ri[j]
                if x:
                    w = _weight(x)
                    if best is None or w < best[0]:
                        best = (w, i, j)
                        if w == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            row_perm[k], row_perm[pi] = row_perm[pi], row_perm[k]
        if pj != k:
            for r in a:
                r[k], r[pj] = r[pj], r[k]
            col_perm[k], col_perm[pj] = col_perm[pj], col_perm[k]
        p = a[k][k]
        rk = a[k]
        for i in range(k + 1, nr):
            ri = a[i]
            f = ri[k]
            for j in range(k + 1, nc):
                x = p * ri[j]
                if f and rk[j]:
                    x = x - f * rk[j]
                ri[j] = _exact_div(x, prev)
            ri[k] = 0 * p
        prev = p
        k += 1
    rows = tuple(sorted(row_perm[:k]))
    cols = tuple(sorted(col_perm[:k]))
    # the leading k x k block of the permuted matrix has determinant prev; undo
    # the permutations restricted to the chosen rows/cols to get the sorted minor
    s = _perm_sign([rows.index(r) for r in row_perm[:k]]) * _perm_sign([cols.index(c) for c in col_perm[:k]])
    minor = prev if k else one
    if s < 0:
        minor = -minor
    return BareissResult(k, minor, rows, cols)


def rank_fraction_free(m: Matrix):
    """Return (rank, minor) over the fraction field of the entries' ring.

    Laurent entries are first cleared to polynomials row by row, so the
    minor is a polynomial whose positive roots are where the rank can drop.
    """
    cleared = clear_laurent_rows(m)
    res = bareiss(cleared)
    return res.rank, res.minor


def determinant(m: Matrix):
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    res = bareiss(m)
    if res.rank < m.nrows:
        return 0 * _one_like(m)
    return res.minor


def _one_like(m: Matrix):
    for r in m.rows:
        for x in r:
            if isinstance(x, LaurentPoly):
                return LaurentPoly.constant(1, x.nvars)
    for r in m.rows:
        for x in r:
            if x:
                return x / x
    return Fraction(1)


def _exact_div(x, d):
    if isinstance(x, LaurentPoly):
        if isinstance(d, LaurentPoly):
            return x.exact_div(d)
        return x.map_coeffs(lambda c: c / d) if d != 1 else x
    if isinstance(d, LaurentPoly):
        if d.is_constant():
            return x / d.constant_term()
        raise ArithmeticError("scalar divided by a nonconstant polynomial")
    return x / d


def _perm_sign(p: list[int]) -> int:
    p = list(p)
    s = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def submatrix(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return Matrix([[m.rows[i][j] for j in cols] for i in rows], len(rows), len(cols))


def evaluate_matrix(m: Matrix, point) -> Matrix:
    def ev(x):
        if isinstance(x, LaurentPoly):
            return x.evaluate(point)
        return x
    return m.map(ev)
