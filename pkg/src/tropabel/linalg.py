"""Exact linear algebra over Q and over Z.

Two layers live here:

  * ``Mat`` — an immutable dense matrix of ``Fraction`` entries with exact
    Gaussian elimination (det, solve, inverse).  Desk-scale only; no pivoting
    heuristics beyond "first nonzero" are needed because arithmetic is exact.

  * integer normal forms — column Hermite form in one fixed convention
    (lower-triangular, positive diagonal, off-diagonal row entries reduced into
    [0, diagonal)), Smith form with transformation matrices, and integer
    kernel / congruence-solution lattices built on top of them.

The Hermite convention is load-bearing: canonical bases make structural
equality of lattices coincide with mathematical equality everywhere else in
the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, RankDeficient, SingularLattice
from .rationals import rat

IntRows = list[list[int]]


class Mat:
    """Immutable rational matrix. Never mutate ``entries``."""

    __slots__ = ("entries",)

    def __init__(self, rows: Iterable[Iterable[int | str | Fraction]]):
        self.entries: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(rat(x) for x in row) for row in rows
        )
        if self.entries:
            m = len(self.entries[0])
            if any(len(row) != m for row in self.entries):
                raise DimensionMismatch("ragged rows")

    # -- shape and access ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def m(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int) -> "Mat":
        return cls([[0] * m for _ in range(n)])

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence[int | str | Fraction]]) -> "Mat":
        n = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    # -- structure -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Mat) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Mat[{body}]"

    @property
    def T(self) -> "Mat":
        return Mat(zip(*self.entries)) if self.entries else Mat([])

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def is_symmetric(self) -> bool:
        return self == self.T

    def int_rows(self) -> IntRows:
        if not self.is_integral():
            raise DimensionMismatch("matrix is not integral")
        return [[int(x) for x in row] for row in self.entries]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(
            [a + b for a, b in zip(r, s)]
            for r, s in zip(self.entries, other.entries)
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(
            [a - b for a, b in zip(r, s)]
            for r, s in zip(self.entries, other.entries)
        )

    def __neg__(self) -> "Mat":
        return Mat([-x for x in row] for row in self.entries)

    def scale(self, c: int | Fraction) -> "Mat":
        c = rat(c)
        return Mat([c * x for x in row] for row in self.entries)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.m != other.n:
            raise DimensionMismatch(f"cannot multiply {self.n}x{self.m} by {other.n}x{other.m}")
        cols = list(zip(*other.entries))
        return Mat(
            [sum(a * b for a, b in zip(row, col)) for col in cols]
            for row in self.entries
        )

    def mul_vec(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(v) != self.m:
            raise DimensionMismatch(f"vector length {len(v)} != {self.m}")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def _same_shape(self, other: "Mat") -> None:
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionMismatch("shape mismatch")

    # -- elimination ---------------------------------------------------------

    def det(self) -> Fraction:
        if self.n != self.m:
            raise DimensionMismatch("determinant of non-square matrix")
        a = [list(row) for row in self.entries]
        n = self.n
        det = Fraction(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det *= a[c][c]
            inv = 1 / a[c][c]
            for i in range(c + 1, n):
                if a[i][c] != 0:
                    f = a[i][c] * inv
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return det

    def solve_mat(self, rhs: "Mat") -> "Mat":
        """Solve self @ X = rhs for a square nonsingular self."""
        if self.n != self.m:
            raise DimensionMismatch("solve needs a square matrix")
        if rhs.n != self.n:
            raise DimensionMismatch("right-hand side has wrong height")
        n, k = self.n, rhs.m
        a = [list(srow) + list(rrow) for srow, rrow in zip(self.entries, rhs.entries)]
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c] != 0), None)
            if piv is None:
                raise SingularLattice("singular matrix in exact solve")
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for i in range(n):
                if i != c and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return Mat([a[i][n:] for i in range(n)])

    def solve(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        sol = self.solve_mat(Mat([[x] for x in v]))
        return tuple(row[0] for row in sol.entries)

    def inv(self) -> "Mat":
        return self.solve_mat(Mat.identity(self.n))


# ---------------------------------------------------------------------------
# Integer normal forms
# ---------------------------------------------------------------------------


def _transpose(rows: Sequence[Sequence[int]]) -> IntRows:
    return [list(col) for col in zip(*rows)] if rows else []


def row_hnf(rows: Sequence[Sequence[int]]) -> tuple[IntRows, IntRows]:
    """Row Hermite form: returns (H, U) with U @ A = H, U unimodular.

    H is in row-echelon form; each pivot is positive and the entries above a
    pivot are reduced into [0, pivot). Zero rows sink to the bottom.
    """
    a = [list(r) for r in rows]
    n = len(a)
    m = len(a[0]) if a else 0
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, n):
            # euclid on (a[r][c], a[i][c]) by alternating reduce-and-swap
            while a[i][c] != 0:
                q = a[r][c] // a[i][c]
                a[r] = [x - q * y for x, y in zip(a[r], a[i])]
                u[r] = [x - q * y for x, y in zip(u[r], u[i])]
                a[r], a[i] = a[i], a[r]
                u[r], u[i] = u[i], u[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u


def column_hnf(rows: Sequence[Sequence[int]]) -> tuple[IntRows, IntRows]:
    """Column Hermite form: returns (H, U) with A @ U = H, U unimodular.

    For square nonsingular A this is lower-triangular with positive diagonal
    and row entries left of the diagonal reduced into [0, diagonal); in
    general the nonzero columns come first and zero columns sink to the right.
    """
    ht, ut = row_hnf(_transpose(rows))
    return _transpose(ht), _transpose(ut)


def hnf(rows: Sequence[Sequence[int]]) -> tuple[IntRows, IntRows]:
    """Canonical column Hermite form of a full-column-rank integer matrix.

    Returns (H, U) with H = A @ U. Raises RankDeficient when the columns are
    dependent, since then no canonical full set of generators exists.
    """
    if not rows or not rows[0]:
        raise RankDeficient("empty matrix")
    h, u = column_hnf(rows)
    k = len(rows[0])
    if any(all(h[i][j] == 0 for i in range(len(h))) for j in range(k)):
        raise RankDeficient("columns are linearly dependent")
    return h, u


def snf(rows: Sequence[Sequence[int]]) -> tuple[IntRows, IntRows, IntRows]:
    """Smith form: returns (U, D, W) with U @ A @ W = D.

    D is diagonal with nonnegative entries d_1 | d_2 | ...; U and W are
    unimodular.
    """
    a = [list(r) for r in rows]
    n = len(a)
    m = len(a[0]) if a else 0
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    w = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in w:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in w:
            row[dst] -= q * row[src]

    t = 0
    while t < min(n, m):
        entries = [(i, j) for i in range(t, n) for j in range(t, m) if a[i][j] != 0]
        if not entries:
            break
        i0, j0 = min(entries, key=lambda ij: abs(a[ij[0]][ij[1]]))
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, n):
                while a[i][t] != 0:
                    add_row(i, t, a[i][t] // a[t][t])
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, m):
                while a[t][j] != 0:
                    add_col(j, t, a[t][j] // a[t][t])
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        # enforce d_t | every remaining entry
        viol = next(
            ((i, j) for i in range(t + 1, n) for j in range(t + 1, m) if a[i][j] % a[t][t]),
            None,
        )
        if viol is not None:
            add_row(t, viol[0], -1)
            continue
        t += 1
    return u, a, w


def kernel_columns(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the integer kernel {x : A @ x = 0}, as column vectors."""
    h, u = column_hnf(rows)
    n = len(rows)
    k = len(rows[0]) if rows else 0
    rank = sum(1 for j in range(k) if any(h[i][j] != 0 for i in range(n)))
    return [[u[i][j] for i in range(k)] for j in range(rank, k)]


def congruence_lattice(rows: Sequence[Sequence[int]], modulus: int) -> IntRows:
    """Canonical basis of {x in Z^m : A @ x = 0 (mod modulus)}.

    The lattice always has full rank m (it contains modulus * Z^m); the result
    is the m x m column-Hermite basis.
    """
    n = len(rows)
    m = len(rows[0])
    wide = [list(rows[i]) + [-modulus if j == i else 0 for j in range(n)] for i in range(n)]
    cols = [col[:m] for col in kernel_columns(wide)]
    if len(cols) != m:
        raise RankDeficient("congruence solution lattice is rank deficient")
    h, _ = hnf(_transpose(cols))
    return h
