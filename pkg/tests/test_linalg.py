import random
from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from tropabel.errors import DimensionMismatch, RankDeficient, SingularLattice
from tropabel.linalg import Mat, congruence_lattice, hnf, kernel_columns, snf

F = Fraction


def rand_int_matrix(rng, n, m, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)]


def rand_unimodular(rng, n, steps=8):
    """Product of elementary integer column operations: det +-1 by construction."""
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        for k in range(n):
            u[k][i] += c * u[k][j]
    return u


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)
    ]


# ---------------------------------------------------------------------------
# Mat basics
# ---------------------------------------------------------------------------


def test_mat_shape_errors():
    a = Mat([[1, 2]])
    b = Mat([[1], [2]])
    with pytest.raises(DimensionMismatch):
        a + b
    with pytest.raises(DimensionMismatch):
        a.mul_vec((F(1),))


def test_det_inverse_random():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(1, 4)
        m = Mat(rand_int_matrix(rng, n, n))
        sym_det = sympy.Matrix(n, n, lambda i, j: int(m.entries[i][j])).det()
        assert m.det() == sym_det
        if m.det() != 0:
            assert m @ m.inv() == Mat.identity(n)


def test_solve_singular():
    m = Mat([[1, 2], [2, 4]])
    with pytest.raises(SingularLattice):
        m.solve((F(1), F(0)))


def test_from_cols_round_trip():
    m = Mat([[1, 2], [3, 4]])
    assert Mat.from_cols([m.col(0), m.col(1)]) == m


# ---------------------------------------------------------------------------
# Hermite normal form (column convention: lower triangular, positive diagonal,
# row entries left of the diagonal reduced into [0, diagonal))
# ---------------------------------------------------------------------------


def test_hnf_fixed_example():
    # columns (2,0) and (1,1) span the same lattice as (1,1) and (0,2)
    h, u = hnf([[2, 1], [0, 1]])
    assert h == [[1, 0], [1, 2]]
    assert mat_mul([[2, 1], [0, 1]], u) == h


def test_hnf_identity_and_diagonal():
    assert hnf([[1, 0], [0, 1]])[0] == [[1, 0], [0, 1]]
    assert hnf([[3, 0], [0, 5]])[0] == [[3, 0], [0, 5]]


def test_hnf_shape():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 4)
        a = rand_int_matrix(rng, n, n)
        while Mat(a).det() == 0:
            a = rand_int_matrix(rng, n, n)
        h, u = hnf(a)
        assert mat_mul(a, u) == h
        assert abs(Mat(u).det()) == 1
        for i in range(n):
            assert h[i][i] > 0
            for j in range(i + 1, n):
                assert h[i][j] == 0
            for j in range(i):
                assert 0 <= h[i][j] < h[i][i]


def test_hnf_column_span_invariance():
    # hnf(A) == hnf(A @ U) for unimodular U: the canonical form depends only
    # on the column span
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 4)
        a = rand_int_matrix(rng, n, n)
        if Mat(a).det() == 0:
            continue
        u = rand_unimodular(rng, n)
        assert hnf(a)[0] == hnf(mat_mul(a, u))[0]


def test_hnf_membership_oracle():
    # columns of A and columns of hnf(A) generate the same lattice
    rng = random.Random(13)
    for _ in range(30):
        n = rng.randint(1, 3)
        a = rand_int_matrix(rng, n, n)
        if Mat(a).det() == 0:
            continue
        h = Mat(hnf(a)[0])
        assert (h.inv() @ Mat(a)).is_integral()
        assert (Mat(a).inv() @ h).is_integral()


def test_hnf_rank_deficient():
    with pytest.raises(RankDeficient):
        hnf([[1, 2], [2, 4]])


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def test_snf_fixed_examples():
    _, d, _ = snf([[2, 0], [0, 3]])
    assert [d[0][0], d[1][1]] == [1, 6]
    _, d, _ = snf([[2, 4], [4, 8]])
    assert [d[0][0], d[1][1]] == [2, 0]


def test_snf_random_against_sympy():
    rng = random.Random(17)
    for _ in range(40):
        n = rng.randint(1, 4)
        a = rand_int_matrix(rng, n, n)
        u, d, w = snf(a)
        # transformation property and unimodularity
        assert mat_mul(mat_mul(u, a), w) == d
        assert abs(Mat(u).det()) == 1
        assert abs(Mat(w).det()) == 1
        # diagonal with a divisibility chain
        diag = [d[i][i] for i in range(n)]
        assert all(d[i][j] == 0 for i in range(n) for j in range(n) if i != j)
        for i in range(n - 1):
            if diag[i + 1] != 0:
                assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
        sym = smith_normal_form(sympy.Matrix(n, n, lambda i, j: a[i][j]))
        assert [abs(diag[i]) for i in range(n)] == [abs(sym[i, i]) for i in range(n)]


# ---------------------------------------------------------------------------
# Kernels and congruence lattices
# ---------------------------------------------------------------------------


def test_kernel_columns_annihilate():
    rng = random.Random(19)
    for _ in range(30):
        n, m = rng.randint(1, 3), rng.randint(1, 4)
        a = rand_int_matrix(rng, n, m)
        for col in kernel_columns(a):
            assert all(sum(a[i][j] * col[j] for j in range(m)) == 0 for i in range(n))


def test_kernel_rank_matches_sympy():
    rng = random.Random(29)
    for _ in range(20):
        n, m = rng.randint(1, 3), rng.randint(1, 4)
        a = rand_int_matrix(rng, n, m)
        rank = sympy.Matrix(n, m, lambda i, j: a[i][j]).rank()
        assert len(kernel_columns(a)) == m - rank


def test_congruence_lattice_brute_force():
    # {x : A x = 0 mod d} checked against enumeration of a box of points
    rng = random.Random(23)
    for _ in range(20):
        g = rng.randint(1, 2)
        d = rng.choice([2, 3, 4])
        a = rand_int_matrix(rng, g, g)
        bm = Mat(congruence_lattice(a, d))
        inv = bm.inv()
        box = range(-d, d + 1)
        pts = [(x,) for x in box] if g == 1 else [(x, y) for x in box for y in box]
        for v in pts:
            in_span = all(c.denominator == 1 for c in inv.mul_vec(tuple(map(F, v))))
            satisfies = all(
                sum(a[i][j] * v[j] for j in range(g)) % d == 0 for i in range(g)
            )
            assert satisfies == in_span
