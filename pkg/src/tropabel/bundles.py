"""Tropical line and vector bundles on real tori with integral structure.

A line-bundle summand is a triple (cover lattice, class matrix, covector):
the bundle on the quotient torus obtained by pushing the factor of automorphy
(H, l) forward along the finite cover N_R/Lambda' -> N_R/Lambda.  A vector
bundle is the multiset of its indecomposable summands, kept in a canonical
order so that structural equality of values is equality of bundles.

The class matrix of a summand is stored ambiently (on the full period-lattice
basis); restriction to the cover is a basis change, and the unique Q-linear
extension back to the full lattice — the summand's slope — is the stored
matrix itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatch,
    EmptyBundle,
    InvalidClass,
    LatticeMismatch,
    MixedClasses,
    NotCompatible,
    NotContained,
    SlopeMismatch,
)
from .lattices import QLattice, Sublattice, quotient, reduce_mod_lattice
from .linalg import Mat
from .nspairings import TropTorus, is_r_symmetric
from .rationals import rat


@dataclass(frozen=True)
class TropLineBundle:
    """One indecomposable summand: the pushforward of (ns, l) from a cover.

    ``l`` holds the covector's values on the Hermite basis of ``lattice``;
    ``ns`` is the ambient class matrix, required to be real-symmetric for the
    torus and integral on the cover.
    """

    torus: TropTorus
    lattice: Sublattice
    ns: Mat
    l: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "l", tuple(rat(x) for x in self.l))
        g = self.torus.g
        if self.lattice.ambient_rank != g or (self.ns.n, self.ns.m) != (g, g):
            raise AmbientMismatch("summand data does not match the torus rank")
        if len(self.l) != g:
            raise AmbientMismatch("covector must give one value per basis vector")
        if not is_r_symmetric(self.ns, self.torus.v):
            raise InvalidClass("V^T H is not symmetric")
        if not (self.ns @ self.lattice.mat).is_integral():
            raise InvalidClass("class matrix is not integral on the cover lattice")

    @property
    def rank(self) -> int:
        return self.lattice.index

    @property
    def sort_key(self):
        return (self.lattice.basis, self.ns.entries, self.l)

    def l_value(self, x: Sequence[int | Fraction]) -> Fraction:
        """The Q-linear extension of the covector, at lattice coordinates x."""
        coords = self.lattice.mat_inv.mul_vec(tuple(rat(c) for c in x))
        return sum((a * b for a, b in zip(self.l, coords)), Fraction(0))


@dataclass(frozen=True)
class TropVectorBundle:
    """Multiset of summands in canonical order."""

    torus: TropTorus
    summands: tuple[TropLineBundle, ...]

    def __post_init__(self):
        if any(s.torus != self.torus for s in self.summands):
            raise AmbientMismatch("summands live on a different torus")
        object.__setattr__(
            self, "summands", tuple(sorted(self.summands, key=lambda s: s.sort_key))
        )

    @property
    def rank(self) -> int:
        return sum(s.rank for s in self.summands)


def line_bundle(
    torus: TropTorus,
    lattice: Sublattice,
    ns: Mat,
    l: Sequence[int | str | Fraction],
) -> TropLineBundle:
    return TropLineBundle(torus, lattice, ns, tuple(rat(x) for x in l))


def as_bundle(summands: TropLineBundle | Iterable[TropLineBundle]) -> TropVectorBundle:
    if isinstance(summands, TropLineBundle):
        return TropVectorBundle(summands.torus, (summands,))
    summands = tuple(summands)
    if not summands:
        raise EmptyBundle("cannot infer the torus of an empty bundle")
    return TropVectorBundle(summands[0].torus, summands)


def cover_torus(torus: TropTorus, sub: Sublattice) -> TropTorus:
    """The torus of the cover: period positions are those of sub's basis."""
    return TropTorus(torus.v @ sub.mat)


def _char_value(torus: TropTorus, x: Sequence[int | Fraction], m: Sequence[Fraction]) -> Fraction:
    """<x, m>: the character m evaluated at lattice coordinates x."""
    pos = torus.v.mul_vec(tuple(rat(c) for c in x))
    return sum((a * b for a, b in zip(pos, m)), Fraction(0))


def _coset_reps(lat: Sublattice) -> list[tuple[int, ...]]:
    """Canonical representatives of Z^g / lat, reduced into lat's basis box."""
    q = quotient(Sublattice.full(lat.ambient_rank), lat)
    reps = []
    for e in q.elements():
        red = reduce_mod_lattice(q.lift(e), lat.mat)
        reps.append(tuple(int(x) for x in red))
    return sorted(reps)


# ---------------------------------------------------------------------------
# Bundle operations
# ---------------------------------------------------------------------------


def _same_torus(e1, e2) -> None:
    if e1.torus != e2.torus:
        raise AmbientMismatch("operands live on different tori")


def direct_sum(e1: TropVectorBundle, e2: TropVectorBundle) -> TropVectorBundle:
    _same_torus(e1, e2)
    return TropVectorBundle(e1.torus, e1.summands + e2.summands)


def tensor(e1: TropVectorBundle, e2: TropVectorBundle) -> TropVectorBundle:
    """Fiber-product tensor: summand pairs split into coset components.

    For summands on covers L1, L2 the components are indexed by the cosets of
    L1 + L2; each lives on L1 ∩ L2 with class H1 + H2, and the second factor's
    covector is twisted by the translation over the canonical coset
    representative delta, contributing -<., H2(delta)>.
    """
    _same_torus(e1, e2)
    torus = e1.torus
    out = []
    for s1 in e1.summands:
        for s2 in e2.summands:
            inter = s1.lattice & s2.lattice
            total = s1.lattice + s2.lattice
            ns = s1.ns + s2.ns
            basis = inter.generators()
            base_l = [s1.l_value(b) + s2.l_value(b) for b in basis]
            for delta in _coset_reps(total):
                m = s2.ns.mul_vec(tuple(Fraction(x) for x in delta))
                l = tuple(
                    v - _char_value(torus, b, m) for v, b in zip(base_l, basis)
                )
                out.append(TropLineBundle(torus, inter, ns, l))
    return TropVectorBundle(torus, tuple(out))


def pullback(e: TropVectorBundle, sub: Sublattice) -> TropVectorBundle:
    """Pull back along the cover N_R/sub -> N_R/Lambda.

    The result lives on the cover torus; summands split into components over
    the cosets of (summand lattice + sub), each on the intersection, with the
    covector twisted by the coset representative's translation.
    """
    torus = e.torus
    target = cover_torus(torus, sub)
    out = []
    for s in e.summands:
        inter = s.lattice & sub
        total = s.lattice + sub
        new_lat = Sublattice((sub.mat_inv @ inter.mat).int_rows())
        amb_basis = sub.mat @ new_lat.mat
        amb_cols = [amb_basis.col(j) for j in range(new_lat.ambient_rank)]
        new_ns = s.ns @ sub.mat
        for delta in _coset_reps(total):
            m = s.ns.mul_vec(tuple(Fraction(x) for x in delta))
            l = tuple(
                s.l_value(c) - _char_value(torus, c, m) for c in amb_cols
            )
            out.append(TropLineBundle(target, new_lat, new_ns, l))
    return TropVectorBundle(target, tuple(out))


def pushforward(
    e: TropVectorBundle, sub: Sublattice, parent: TropTorus
) -> TropVectorBundle:
    """Push a bundle on the cover N_R/sub down to the parent torus.

    Pure relabeling through the composed cover: each summand's lattice is
    mapped into parent coordinates and its data re-expressed there.
    """
    if e.torus != cover_torus(parent, sub):
        raise AmbientMismatch("bundle does not live on the stated cover of the parent")
    out = []
    for s in e.summands:
        amb_lat = Sublattice((sub.mat @ s.lattice.mat).int_rows())
        ns = s.ns @ sub.mat_inv
        l = tuple(
            s.l_value(sub.mat_inv.mul_vec(tuple(Fraction(c) for c in col)))
            for col in amb_lat.generators()
        )
        out.append(TropLineBundle(parent, amb_lat, ns, l))
    return TropVectorBundle(parent, tuple(out))


def translate(e: TropVectorBundle, x: Sequence[int | str | Fraction]) -> TropVectorBundle:
    """Translate by the point with N_Q-coordinates x: l goes to l - <., H(x)>."""
    torus = e.torus
    pos = tuple(rat(c) for c in x)
    lam_coords = torus.v.inv().mul_vec(pos)
    out = []
    for s in e.summands:
        m = s.ns.mul_vec(lam_coords)
        l = tuple(
            v - _char_value(torus, b, m)
            for v, b in zip(s.l, s.lattice.generators())
        )
        out.append(TropLineBundle(torus, s.lattice, s.ns, l))
    return TropVectorBundle(torus, tuple(out))


def slope(e: TropVectorBundle) -> Mat:
    """Rank-weighted average of the summand classes (a rational class matrix)."""
    if not e.summands:
        raise EmptyBundle("slope of the empty bundle")
    g = e.torus.g
    total = Mat.zeros(g, g)
    for s in e.summands:
        total = total + s.ns.scale(s.rank)
    return total.scale(Fraction(1, e.rank))


def is_homogeneous(e: TropVectorBundle) -> bool:
    zero = Mat.zeros(e.torus.g, e.torus.g)
    return all(s.ns == zero for s in e.summands)


def is_semi_homogeneous(e: TropVectorBundle) -> bool:
    if not e.summands:
        return True
    first = e.summands[0].ns
    return all(s.ns == first for s in e.summands)


# ---------------------------------------------------------------------------
# Equivalence and moduli coordinates
# ---------------------------------------------------------------------------


def restrict_line_bundle(s: TropLineBundle, cover: Sublattice) -> TropLineBundle:
    """The same factor of automorphy on a finer cover (pure restriction)."""
    if not s.lattice.contains_lattice(cover):
        raise NotContained("restriction target is not contained in the cover lattice")
    l = tuple(s.l_value(b) for b in cover.generators())
    return TropLineBundle(s.torus, cover, s.ns, l)


def _twist_lattice(torus: TropTorus, lat: Sublattice, ns: Mat) -> QLattice:
    """Covectors on lat coming from integral characters and class images."""
    bt_vt = lat.mat.T @ torus.v.T
    cols = [bt_vt.col(j) for j in range(lat.ambient_rank)]
    cols += [(bt_vt @ ns).col(j) for j in range(lat.ambient_rank)]
    return QLattice.from_generators(cols)


def iso_pushforward(s1: TropLineBundle, s2: TropLineBundle) -> bool:
    """Whether the two pushforwards from the same cover are isomorphic.

    True exactly when the classes agree and the covector difference lies in
    the lattice of covectors induced by integral characters plus class images
    of full-lattice translations.
    """
    _same_torus(s1, s2)
    if s1.lattice != s2.lattice:
        raise LatticeMismatch("summands live on different covers")
    if s1.ns != s2.ns:
        return False
    diff = tuple(a - b for a, b in zip(s1.l, s2.l))
    return _twist_lattice(s1.torus, s1.lattice, s1.ns).contains(diff)


def equivalent(
    s1: TropLineBundle, s2: TropLineBundle, cover: Sublattice | None = None
) -> bool:
    """Bundle equivalence through a common cover (defaults to the intersection)."""
    _same_torus(s1, s2)
    if cover is None:
        cover = s1.lattice & s2.lattice
    return iso_pushforward(
        restrict_line_bundle(s1, cover), restrict_line_bundle(s2, cover)
    )


def gamma_compatible(e: TropVectorBundle, gamma: Sublattice) -> bool:
    return all(s.lattice.contains_lattice(gamma) for s in e.summands)


@dataclass(frozen=True)
class ModuliPoint:
    """Canonical coordinate of a compatible summand class.

    coords is the box representative of the restricted covector modulo the
    twist lattice on gamma.
    """

    torus: TropTorus
    gamma: Sublattice
    ns: Mat
    coords: tuple[Fraction, ...]


def moduli_point(s: TropLineBundle, gamma: Sublattice, ns: Mat) -> ModuliPoint:
    if s.ns != ns:
        raise SlopeMismatch("summand slope differs from the supplied class")
    if not s.lattice.contains_lattice(gamma):
        raise NotCompatible("gamma is not contained in the summand's cover lattice")
    restricted = tuple(s.l_value(b) for b in gamma.generators())
    coords = _twist_lattice(s.torus, gamma, ns).reduce(restricted)
    return ModuliPoint(s.torus, gamma, ns, coords)


def sym_point(points: Sequence[ModuliPoint]) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical (sorted) coordinate multiset of equally-typed moduli points."""
    if not points:
        return ()
    first = points[0]
    for p in points[1:]:
        if (p.torus, p.gamma, p.ns) != (first.torus, first.gamma, first.ns):
            raise MixedClasses("moduli points carry different (gamma, class) data")
    return tuple(sorted(p.coords for p in points))
