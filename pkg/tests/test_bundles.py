import random
from fractions import Fraction

import pytest

from tropabel.bundles import (
    ModuliPoint,
    TropLineBundle,
    TropVectorBundle,
    as_bundle,
    cover_torus,
    direct_sum,
    equivalent,
    gamma_compatible,
    is_homogeneous,
    is_semi_homogeneous,
    iso_pushforward,
    line_bundle,
    moduli_point,
    pullback,
    pushforward,
    restrict_line_bundle,
    slope,
    sym_point,
    tensor,
    translate,
)
from tropabel.errors import (
    AmbientMismatch,
    EmptyBundle,
    InvalidClass,
    LatticeMismatch,
    MixedClasses,
    NotCompatible,
    NotContained,
    SlopeMismatch,
)
from tropabel.lattices import Sublattice
from tropabel.linalg import Mat
from tropabel.nspairings import TropTorus

from conftest import rand_fraction, rand_integral_symmetric, rand_sublattice

F = Fraction

EYE2 = TropTorus(Mat.identity(2))
LINE = TropTorus(Mat([[1]]))


def rand_torus(rng, g):
    while True:
        v = Mat([[rng.randint(-2, 2) for _ in range(g)] for _ in range(g)])
        if v.det() != 0:
            return TropTorus(v)


def rand_line_bundle(rng, torus, lattice=None):
    g = torus.g
    if lattice is None:
        lattice = rand_sublattice(rng, g)
    ns = rand_integral_symmetric(rng, torus.v)
    l = [rand_fraction(rng) for _ in range(g)]
    return line_bundle(torus, lattice, ns, l)


# ---------------------------------------------------------------------------
# Validation and canonical form
# ---------------------------------------------------------------------------


def test_summand_validation():
    with pytest.raises(InvalidClass):
        line_bundle(EYE2, Sublattice.full(2), Mat([[0, 1], [0, 0]]), (0, 0))
    with pytest.raises(InvalidClass):
        # half-integral class is not integral on the full lattice
        line_bundle(EYE2, Sublattice.full(2), Mat([[F(1, 2), 0], [0, 1]]), (0, 0))
    # but it is integral on the right cover
    ok = line_bundle(
        EYE2, Sublattice([[2, 0], [0, 1]]), Mat([[F(1, 2), 0], [0, 1]]), (0, 0)
    )
    assert ok.rank == 2
    with pytest.raises(AmbientMismatch):
        line_bundle(EYE2, Sublattice.full(2), Mat.identity(2), (0,))
    with pytest.raises(AmbientMismatch):
        line_bundle(EYE2, Sublattice.full(1), Mat.identity(2), (0, 0))


def test_bundle_canonical_order():
    s1 = line_bundle(EYE2, Sublattice.full(2), Mat.identity(2), (1, 0))
    s2 = line_bundle(EYE2, Sublattice.full(2), Mat.identity(2), (0, 1))
    assert as_bundle([s1, s2]) == as_bundle([s2, s1])
    assert as_bundle([s1, s2]).rank == 2
    with pytest.raises(EmptyBundle):
        as_bundle([])


def test_direct_sum():
    s1 = line_bundle(EYE2, Sublattice.full(2), Mat.identity(2), (1, 0))
    s2 = line_bundle(EYE2, Sublattice([[2, 0], [0, 1]]), Mat.zeros(2, 2), (0, 0))
    e = direct_sum(as_bundle(s1), as_bundle(s2))
    assert e.rank == 3
    other = TropTorus(Mat([[1, 0], [1, 2]]))
    s3 = line_bundle(other, Sublattice.full(2), Mat.zeros(2, 2), (0, 0))
    with pytest.raises(AmbientMismatch):
        direct_sum(as_bundle(s1), as_bundle(s3))


def test_l_value_is_linear_extension():
    s = line_bundle(EYE2, Sublattice([[2, 0], [0, 2]]), Mat.identity(2), (1, F(1, 3)))
    # basis vectors (2,0), (0,2) carry the stored values
    assert s.l_value((2, 0)) == 1
    assert s.l_value((0, 2)) == F(1, 3)
    assert s.l_value((1, 1)) == F(1, 2) + F(1, 6)
    assert s.l_value((0, 0)) == 0


# ---------------------------------------------------------------------------
# Tensor
# ---------------------------------------------------------------------------


def test_tensor_full_lattices():
    s1 = line_bundle(EYE2, Sublattice.full(2), Mat.identity(2), (F(1, 2), F(1, 3)))
    s2 = line_bundle(EYE2, Sublattice.full(2), Mat.identity(2), (0, F(1, 4)))
    e = tensor(as_bundle(s1), as_bundle(s2))
    assert len(e.summands) == 1
    out = e.summands[0]
    assert out.ns == Mat.identity(2).scale(2)
    assert out.l == (F(1, 2), F(7, 12))
    assert out.lattice == Sublattice.full(2)


def test_tensor_coset_components():
    two = Sublattice([[2, 0], [0, 2]])
    s1 = line_bundle(EYE2, two, Mat.identity(2), (1, 0))
    s2 = line_bundle(EYE2, two, Mat.identity(2), (0, 1))
    e = tensor(as_bundle(s1), as_bundle(s2))
    # components over the four cosets of 2Z^2, all on 2Z^2 with class 2I
    assert len(e.summands) == 4
    assert e.rank == 16
    assert {s.lattice for s in e.summands} == {two}
    assert {s.ns for s in e.summands} == {Mat.identity(2).scale(2)}
    assert sorted(s.l for s in e.summands) == [
        (F(-1), F(-1)),
        (F(-1), F(1)),
        (F(1), F(-1)),
        (F(1), F(1)),
    ]


def test_tensor_rank_and_slope_laws():
    rng = random.Random(103)
    for _ in range(12):
        g = rng.randint(1, 2)
        torus = rand_torus(rng, g)
        e1 = as_bundle([rand_line_bundle(rng, torus) for _ in range(rng.randint(1, 2))])
        e2 = as_bundle([rand_line_bundle(rng, torus) for _ in range(rng.randint(1, 2))])
        t = tensor(e1, e2)
        assert t.rank == e1.rank * e2.rank
        assert slope(t) == slope(e1) + slope(e2)


def test_tensor_same_class_commutes():
    two = Sublattice([[2, 0], [0, 1]])
    s1 = line_bundle(EYE2, two, Mat.identity(2), (F(1, 3), 0))
    s2 = line_bundle(EYE2, Sublattice.full(2), Mat.identity(2), (0, F(1, 5)))
    assert tensor(as_bundle(s1), as_bundle(s2)) == tensor(as_bundle(s2), as_bundle(s1))


# ---------------------------------------------------------------------------
# Pullback and pushforward
# ---------------------------------------------------------------------------


def test_pullback_trivial_cover():
    rng = random.Random(107)
    torus = rand_torus(rng, 2)
    e = as_bundle([rand_line_bundle(rng, torus) for _ in range(2)])
    assert pullback(e, Sublattice.full(2)) == e


def test_pullback_splits_pushed_summand():
    # a summand on 2Z x Z pulled back along the same cover splits into two
    # full-lattice components
    sub = Sublattice([[2, 0], [0, 1]])
    s = line_bundle(EYE2, sub, Mat.zeros(2, 2), (F(1, 2), F(1, 3)))
    e = pullback(as_bundle(s), sub)
    assert e.torus == cover_torus(EYE2, sub)
    assert len(e.summands) == 2
    assert all(x.lattice == Sublattice.full(2) for x in e.summands)
    assert e.rank == 2


def test_pullback_preserves_rank():
    rng = random.Random(109)
    for _ in range(15):
        g = rng.randint(1, 2)
        torus = rand_torus(rng, g)
        e = as_bundle([rand_line_bundle(rng, torus) for _ in range(rng.randint(1, 2))])
        sub = rand_sublattice(rng, g)
        assert pullback(e, sub).rank == e.rank


def test_pushforward_rank_and_round_trip():
    sub = Sublattice([[2, 0], [0, 1]])
    cov = cover_torus(EYE2, sub)
    s = line_bundle(cov, Sublattice.full(2), Mat.zeros(2, 2), (F(1, 5), F(2, 5)))
    e = pushforward(as_bundle(s), sub, EYE2)
    assert e.torus == EYE2
    assert e.rank == 2 * as_bundle(s).rank
    assert e.summands[0].lattice == sub
    # pulling straight back recovers the sum of coset translates; here the
    # class is zero so both components coincide with the original summand
    back = pullback(e, sub)
    assert back.rank == 2
    assert all(x.l == s.l for x in back.summands)


def test_pushforward_wrong_cover_rejected():
    sub = Sublattice([[2, 0], [0, 1]])
    s = line_bundle(EYE2, Sublattice.full(2), Mat.zeros(2, 2), (0, 0))
    with pytest.raises(AmbientMismatch):
        pushforward(as_bundle(s), sub, EYE2)


def test_pull_push_identity_small():
    # f^* f_* L = direct sum of coset translates of L, exactly
    rng = random.Random(113)
    sub = Sublattice([[1, 0], [1, 2]])
    cov = cover_torus(EYE2, sub)
    lb = line_bundle(cov, Sublattice.full(2), rand_integral_symmetric(rng, cov.v), (F(1, 3), F(1, 7)))
    e = as_bundle(lb)
    round_trip = pullback(pushforward(e, sub, EYE2), sub)
    expected = []
    for delta in [(0, 0), (0, 1)]:
        shift = EYE2.v.mul_vec((F(delta[0]), F(delta[1])))
        expected.extend(translate(e, shift).summands)
    assert round_trip == as_bundle(expected)


# ---------------------------------------------------------------------------
# Translation
# ---------------------------------------------------------------------------


def test_translate_examples():
    s = line_bundle(LINE, Sublattice.full(1), Mat([[2]]), (F(1, 2),))
    out = translate(as_bundle(s), (F(1, 3),))
    assert out.summands[0].l == (F(-1, 6),)
    # zero vector and zero class act trivially
    assert translate(as_bundle(s), (0,)) == as_bundle(s)
    flat = line_bundle(LINE, Sublattice.full(1), Mat([[0]]), (F(1, 2),))
    assert translate(as_bundle(flat), (F(5, 7),)) == as_bundle(flat)


def test_translate_is_additive():
    rng = random.Random(127)
    for _ in range(10):
        g = rng.randint(1, 2)
        torus = rand_torus(rng, g)
        e = as_bundle([rand_line_bundle(rng, torus)])
        x = [rand_fraction(rng) for _ in range(g)]
        y = [rand_fraction(rng) for _ in range(g)]
        both = translate(translate(e, x), y)
        assert both == translate(e, [a + b for a, b in zip(x, y)])
        assert slope(both) == slope(e)


def test_translate_by_period_is_equivalent():
    rng = random.Random(131)
    for _ in range(10):
        torus = rand_torus(rng, 2)
        s = rand_line_bundle(rng, torus, lattice=Sublattice.full(2))
        lam = [rng.randint(-2, 2), rng.randint(-2, 2)]
        shift = torus.v.mul_vec((F(lam[0]), F(lam[1])))
        moved = translate(as_bundle(s), shift).summands[0]
        assert iso_pushforward(s, moved)
        gamma = Sublattice([[2, 0], [0, 2]])
        assert moduli_point(s, gamma, s.ns) == moduli_point(moved, gamma, s.ns)


# ---------------------------------------------------------------------------
# Slope and homogeneity
# ---------------------------------------------------------------------------


def test_slope_weighted_average():
    a = Mat.identity(2)
    b = Mat([[2, 0], [0, 4]])
    s1 = line_bundle(EYE2, Sublattice.full(2), a, (0, 0))
    s2 = line_bundle(EYE2, Sublattice([[2, 0], [0, 1]]), b, (0, 0))
    e = direct_sum(as_bundle(s1), as_bundle(s2))
    assert slope(e) == (a + b.scale(2)).scale(F(1, 3))
    with pytest.raises(EmptyBundle):
        slope(TropVectorBundle(EYE2, ()))


def test_homogeneity_predicates():
    zero = Mat.zeros(2, 2)
    h1 = line_bundle(EYE2, Sublattice.full(2), zero, (F(1, 2), 0))
    h2 = line_bundle(EYE2, Sublattice([[2, 0], [0, 1]]), zero, (0, 0))
    e_flat = as_bundle([h1, h2])
    assert is_homogeneous(e_flat) and is_semi_homogeneous(e_flat)
    k1 = line_bundle(EYE2, Sublattice.full(2), Mat.identity(2), (0, 0))
    k2 = line_bundle(EYE2, Sublattice.full(2), Mat.identity(2), (1, 1))
    e_same = as_bundle([k1, k2])
    assert not is_homogeneous(e_same) and is_semi_homogeneous(e_same)
    e_mixed = as_bundle([h1, k1])
    assert not is_homogeneous(e_mixed) and not is_semi_homogeneous(e_mixed)


# ---------------------------------------------------------------------------
# Equivalence, restriction and moduli coordinates
# ---------------------------------------------------------------------------


def test_restrict_line_bundle():
    s = line_bundle(EYE2, Sublattice.full(2), Mat.identity(2), (F(1, 2), F(1, 3)))
    fine = Sublattice([[2, 0], [0, 3]])
    r = restrict_line_bundle(s, fine)
    assert r.lattice == fine
    assert r.l == (1, 1)
    with pytest.raises(NotContained):
        restrict_line_bundle(r, Sublattice.full(2))


def test_iso_pushforward_one_dimensional():
    two = Sublattice([[2]])
    base = line_bundle(LINE, two, Mat([[0]]), (0,))
    off_by_one = line_bundle(LINE, two, Mat([[0]]), (1,))
    off_by_two = line_bundle(LINE, two, Mat([[0]]), (2,))
    # the twist lattice on 2Z (trivial class) is 2Z
    assert not iso_pushforward(base, off_by_one)
    assert iso_pushforward(base, off_by_two)
    assert iso_pushforward(base, base)


def test_iso_pushforward_errors():
    s1 = line_bundle(LINE, Sublattice([[2]]), Mat([[0]]), (0,))
    s2 = line_bundle(LINE, Sublattice.full(1), Mat([[0]]), (0,))
    with pytest.raises(LatticeMismatch):
        iso_pushforward(s1, s2)
    s3 = line_bundle(LINE, Sublattice([[2]]), Mat([[1]]), (0,))
    assert not iso_pushforward(s1, s3)


def test_equivalent_uses_common_cover():
    # summands on different covers with the same slope: equivalence goes
    # through the intersection cover
    a = line_bundle(EYE2, Sublattice([[2, 0], [0, 1]]), Mat.zeros(2, 2), (1, 0))
    b = line_bundle(EYE2, Sublattice([[1, 0], [0, 2]]), Mat.zeros(2, 2), (0, 0))
    inter = Sublattice([[2, 0], [0, 2]])
    assert equivalent(a, b) == equivalent(a, b, cover=inter)
    # reflexive and symmetric
    assert equivalent(a, a)
    assert equivalent(a, b) == equivalent(b, a)


def test_moduli_point_one_dimensional():
    s = line_bundle(LINE, Sublattice.full(1), Mat([[0]]), (F(3, 2),))
    p = moduli_point(s, Sublattice.full(1), Mat([[0]]))
    assert p.coords == (F(1, 2),)


def test_moduli_point_matches_equivalence():
    rng = random.Random(137)
    gamma = Sublattice([[2, 0], [0, 2]])
    ns = Mat.identity(2)
    pool = [
        line_bundle(EYE2, Sublattice.full(2), ns, (a, b))
        for a in (0, F(1, 2), 1)
        for b in (0, F(1, 3))
    ]
    for s1 in pool:
        for s2 in pool:
            same = moduli_point(s1, gamma, ns) == moduli_point(s2, gamma, ns)
            assert same == equivalent(s1, s2, cover=gamma)


def test_moduli_point_errors():
    s = line_bundle(EYE2, Sublattice.full(2), Mat.identity(2), (0, 0))
    with pytest.raises(SlopeMismatch):
        moduli_point(s, Sublattice.full(2), Mat.zeros(2, 2))
    finer = line_bundle(EYE2, Sublattice([[2, 0], [0, 2]]), Mat.identity(2), (0, 0))
    with pytest.raises(NotCompatible):
        moduli_point(finer, Sublattice.full(2), Mat.identity(2))


def test_gamma_compatible():
    s = line_bundle(EYE2, Sublattice([[2, 0], [0, 1]]), Mat.zeros(2, 2), (0, 0))
    assert gamma_compatible(as_bundle(s), Sublattice([[2, 0], [0, 2]]))
    assert not gamma_compatible(as_bundle(s), Sublattice.full(2))


def test_sym_point():
    gamma = Sublattice.full(1)
    ns = Mat([[0]])
    p1 = moduli_point(line_bundle(LINE, gamma, ns, (F(3, 4),)), gamma, ns)
    p2 = moduli_point(line_bundle(LINE, gamma, ns, (F(1, 4),)), gamma, ns)
    assert sym_point([p1, p2]) == ((F(1, 4),), (F(3, 4),))
    assert sym_point([p2, p1]) == sym_point([p1, p2])
    assert sym_point([]) == ()
    other = ModuliPoint(LINE, gamma, Mat([[1]]), (F(0),))
    with pytest.raises(MixedClasses):
        sym_point([p1, other])
