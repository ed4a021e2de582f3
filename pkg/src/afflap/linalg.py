"""Exact sparse integer matrices and the elimination routines used on them.

Matrices are stored column major (one dict per column), which matches how
operator matrices are assembled from chain images.  Ranks and kernels are
exact: fraction-free (Bareiss) elimination over the integers for ranks,
rational back-substitution for kernels, and the division-free Berkowitz
algorithm for characteristic polynomials.  A fast modular rank (numpy,
single word prime) is provided as a certified one-sided bound:
rank over GF(p) never exceeds the rational rank.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

DEFAULT_PRIME = 1_000_003
SECOND_PRIME = 999_983


class IntMatrix:
    """Sparse exact integer matrix (column-major)."""

    __slots__ = ("rows", "cols", "columns")

    def __init__(self, rows: int, cols: int, columns=None):
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [dict() for _ in range(cols)]
        if len(columns) != cols:
            raise ValueError("column count mismatch")
        self.columns = columns

    # -- constructors -------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    # -- inspection ---------------------------------------------------
    def entry(self, i: int, j: int) -> int:
        return self.columns[j].get(i, 0)

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                if self.columns[i].get(j, 0) != v:
                    return False
        return True

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.columns == other.columns)

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        cols = []
        for c1, c2 in zip(self.columns, other.columns):
            c = dict(c1)
            for i, v in c2.items():
                s = c.get(i, 0) + v
                if s:
                    c[i] = s
                else:
                    c.pop(i, None)
            cols.append(c)
        return IntMatrix(self.rows, self.cols, cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)

    def scale(self, s: int) -> "IntMatrix":
        if s == 0:
            return IntMatrix.zero(self.rows, self.cols)
        return IntMatrix(self.rows, self.cols,
                         [{i: v * s for i, v in c.items()} for c in self.columns])

    def apply(self, vec: dict) -> dict:
        """Image of a sparse column vector {row: value}."""
        out: dict = {}
        for j, v in vec.items():
            if not v:
                continue
            for i, a in self.columns[j].items():
                s = out.get(i, 0) + a * v
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        return IntMatrix(self.rows, other.cols,
                         [self.apply(c) for c in other.columns])

    def transpose(self) -> "IntMatrix":
        cols = [dict() for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                cols[i][j] = v
        return IntMatrix(self.cols, self.rows, cols)

    def shifted(self, lam: int) -> "IntMatrix":
        """self - lam * I (square matrices only)."""
        if self.rows != self.cols:
            raise ValueError("shift needs a square matrix")
        if lam == 0:
            return self
        cols = []
        for j, col in enumerate(self.columns):
            c = dict(col)
            s = c.get(j, 0) - lam
            if s:
                c[j] = s
            else:
                c.pop(j, None)
            cols.append(c)
        return IntMatrix(self.rows, self.cols, cols)

    # -- conversions ----------------------------------------------------
    def to_dense_rows(self) -> list[list[int]]:
        rows = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def to_numpy_mod(self, p: int) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                a[i, j] = v % p
        return a


# ---------------------------------------------------------------------------
# exact elimination

def bareiss_rank(dense_rows: list[list[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on integer rows."""
    m = [row[:] for row in dense_rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        mr = m[rank]
        for i in range(rank + 1, nrows):
            mi = m[i]
            f = mi[col]
            # every row below is rescaled, keeping the divisions exact
            for c in range(col, ncols):
                mi[c] = (pv * mi[c] - f * mr[c]) // prev
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def fraction_kernel(matrix: IntMatrix) -> list[dict[int, Fraction]]:
    """Exact kernel basis in reduced echelon form, deterministic.

    Forward elimination is fraction-free over the integers; the kernel
    vectors are recovered by rational back-substitution, one per free
    column, with value 1 at their own free column and 0 at the others.
    """
    nrows, ncols = matrix.rows, matrix.cols
    m = matrix.to_dense_rows()
    pivots: list[tuple[int, int]] = []  # (row, col)
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        for i in range(rank + 1, nrows):
            mi = m[i]
            f = mi[col]
            mr = m[rank]
            for c in range(col, ncols):
                mi[c] = (pv * mi[c] - f * mr[c]) // prev
        pivots.append((rank, col))
        prev = pv
        rank += 1
        if rank == nrows:
            break
    pivot_cols = [c for _, c in pivots]
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    kernel = []
    for fc in free_cols:
        vec: dict[int, Fraction] = {fc: Fraction(1)}
        for r in range(len(pivots) - 1, -1, -1):
            row, pc = pivots[r]
            if pc > fc:
                continue
            s = Fraction(m[row][fc])
            for c in pivot_cols[r + 1:]:
                if c <= fc and c in vec:
                    s += m[row][c] * vec[c]
            if s:
                vec[pc] = -s / m[row][pc]
        kernel.append(vec)
    return kernel


def exact_nullity(matrix: IntMatrix, lam: int = 0) -> int:
    shifted = matrix.shifted(lam) if lam else matrix
    return matrix.cols - bareiss_rank(shifted.to_dense_rows())


# ---------------------------------------------------------------------------
# modular rank (certified lower bound on the rational rank)

def rank_mod_p(matrix: IntMatrix, lam: int = 0, p: int = DEFAULT_PRIME) -> int:
    shifted = matrix.shifted(lam) if lam else matrix
    a = shifted.to_numpy_mod(p)
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank, col:] = (a[rank, col:] * inv) % p
        below = a[rank + 1:, col]
        mask = below != 0
        if mask.any():
            a[rank + 1:, col:][mask] = (
                a[rank + 1:, col:][mask] - np.outer(below[mask], a[rank, col:])
            ) % p
        rank += 1
    return rank


def nullity_mod_p(matrix: IntMatrix, lam: int = 0, p: int = DEFAULT_PRIME) -> int:
    """n - rank over GF(p); an upper bound on the rational nullity."""
    return matrix.cols - rank_mod_p(matrix, lam, p)


def certify_full_rank(matrix: IntMatrix, lam: int = 0) -> bool:
    """True when the rational kernel of (A - lam I) is provably trivial.

    A full modular rank is conclusive; a modular rank deficit is not, so the
    caller must fall back to exact elimination in that case.
    """
    n = matrix.cols
    if rank_mod_p(matrix, lam, DEFAULT_PRIME) == n:
        return True
    return rank_mod_p(matrix, lam, SECOND_PRIME) == n


# ---------------------------------------------------------------------------
# characteristic polynomials

def berkowitz_charpoly(matrix: IntMatrix) -> list[int]:
    """Characteristic polynomial det(tI - A), division-free.

    Returns coefficients ascending in t, so the leading entry (for t^n) is 1.
    """
    a = matrix.to_dense_rows()
    n = matrix.rows
    if n != matrix.cols:
        raise ValueError("characteristic polynomial needs a square matrix")
    if n == 0:
        return [1]
    # poly holds the char poly of the leading principal minor, descending.
    poly = [1, -a[0][0]]
    for i in range(1, n):
        row = a[i][:i]
        col = [a[t][i] for t in range(i)]
        diag = a[i][i]
        # Toeplitz column: [1, -diag, -row.col, -row.M.col, -row.M^2.col, ...]
        items = [1, -diag]
        vec = col[:]
        for _ in range(i - 1):
            items.append(-sum(r * v for r, v in zip(row, vec)))
            vec = [sum(a[s][t] * vec[t] for t in range(i)) for s in range(i)]
        items.append(-sum(r * v for r, v in zip(row, vec)))
        new = [0] * (len(poly) + 1)
        for s, it in enumerate(items):
            if it:
                for t, pc in enumerate(poly):
                    if s + t < len(new) and pc:
                        new[s + t] += it * pc
        poly = new
    poly.reverse()
    return poly


def strip_integer_roots(coeffs: list[int], root_bound: int):
    """Divide out all non-negative integer roots of a monic polynomial.

    Returns (multiplicity map, remaining factor, ascending).  The remainder
    has no rational roots at all when the matrix is positive semidefinite:
    rational roots of a monic integer polynomial are integers, and the
    spectrum is then contained in [0, root_bound].
    """
    poly = list(coeffs)
    roots: dict[int, int] = {}
    for r in range(0, root_bound + 1):
        while len(poly) > 1 and _poly_eval(poly, r) == 0:
            poly = _synthetic_divide(poly, r)
            roots[r] = roots.get(r, 0) + 1
    return roots, poly


def _poly_eval(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _synthetic_divide(coeffs: list[int], root: int) -> list[int]:
    # coeffs ascending; divide by (t - root), remainder must be zero
    n = len(coeffs) - 1
    out = [0] * n
    carry = coeffs[n]
    for i in range(n - 1, -1, -1):
        out[i] = carry
        carry = coeffs[i] + carry * root
    if carry != 0:
        raise ValueError(f"{root} is not a root")
    return out


def gershgorin_bound(matrix: IntMatrix) -> int:
    """Upper bound on the absolute value of any eigenvalue."""
    sums: dict[int, int] = {}
    for col in matrix.columns:
        for i, v in col.items():
            sums[i] = sums.get(i, 0) + abs(v)
    return max(sums.values(), default=0)
