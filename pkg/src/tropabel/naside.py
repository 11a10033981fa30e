"""Line bundles and semisimple representations over the monomial field model.

A line-bundle factor on a cover is a class together with multiplicative data r
on the cover lattice; r is stored on a basis and extended by a fixed cocycle
formula whose correctness is pinned by the cocycle identity.  Tropicalization
sends the data to the real side of the same torus, landing in the moduli
coordinates computed by the bundle module, and diagonal semisimple
representations tropicalize entrywise by valuation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bundles import ModuliPoint, TropLineBundle, moduli_point
from .errors import (
    AmbientMismatch,
    InvalidClass,
    NotAdmissible,
    NotContained,
    NotInLattice,
    SizeMismatch,
)
from .lattices import SUBGROUP_ENUMERATION_BOUND, Sublattice
from .linalg import Mat, snf
from .monomials import ONE, MultiplicativePoint, ValuedMonomial, eval_character
from .nspairings import NATorus, NSClass
from .tropchar import TropGLElement, TropRepresentation, bundle_from_rep


def _mono_key(m: ValuedMonomial):
    return (m.magnitude, m.phase, m.t_exponent)


@dataclass(frozen=True)
class NACharacter:
    """A homomorphism from the period lattice to the monomial units,
    stored by its values on the lattice basis."""

    values: tuple[ValuedMonomial, ...]

    @property
    def g(self) -> int:
        return len(self.values)

    def value(self, a: Sequence[int]) -> ValuedMonomial:
        if len(a) != self.g:
            raise SizeMismatch("coordinate length differs from the character rank")
        out = ONE
        for v, e in zip(self.values, a):
            out = out * v ** int(e)
        return out

    def __mul__(self, other: "NACharacter") -> "NACharacter":
        if self.g != other.g:
            raise SizeMismatch("characters have different ranks")
        return NACharacter(tuple(a * b for a, b in zip(self.values, other.values)))

    @property
    def sort_key(self):
        return tuple(_mono_key(v) for v in self.values)


def unit_character(torus: NATorus, m: Sequence[int]) -> NACharacter:
    """The character lambda -> <lambda, m> of an integral character m."""
    return NACharacter(
        tuple(eval_character(gen, tuple(int(x) for x in m)) for gen in torus.generators)
    )


@dataclass(frozen=True)
class NALineBundle:
    """Factor of automorphy (class, r) on a cover lattice.

    ``r_basis`` holds the values of r on the Hermite basis of ``lattice``;
    the class must be integral and symmetric for the unit-group pairing there,
    which makes the cocycle extension below single-valued.
    """

    ns: NSClass
    lattice: Sublattice
    r_basis: tuple[ValuedMonomial, ...]

    def __post_init__(self):
        torus = self.ns.torus
        if not isinstance(torus, NATorus):
            raise InvalidClass("the class must live on a multiplicative torus")
        g = torus.g
        if self.lattice.ambient_rank != g or len(self.r_basis) != g:
            raise AmbientMismatch("bundle data does not match the torus rank")
        if not (self.ns.matrix @ self.lattice.mat).is_integral():
            raise InvalidClass("class is not integral on the cover lattice")
        if not self.ns.is_gm_symmetric_on(self.lattice):
            raise InvalidClass("class is not symmetric on the cover lattice")


def _extend_from_basis(
    ns: NSClass,
    basis: Sequence[tuple[int, ...]],
    values: Sequence[ValuedMonomial],
    coeffs: Sequence[int],
) -> ValuedMonomial:
    """r at sum(a_j b_j) for an r given on the b_j, via the cocycle formula.

    r(sum a_j b_j) = prod r_j^(a_j) * prod_(i<j) [b_i,b_j]^(a_i a_j)
                     * prod_j [b_j,b_j]^(a_j (a_j - 1)/2).
    """
    out = ONE
    for v, a in zip(values, coeffs):
        out = out * v ** int(a)
    n = len(basis)
    for i in range(n):
        a_i = int(coeffs[i])
        for j in range(i + 1, n):
            e = a_i * int(coeffs[j])
            if e:
                out = out * ns.gm_pairing(basis[i], basis[j]) ** e
        e = a_i * (a_i - 1) // 2
        if e:
            out = out * ns.gm_pairing(basis[i], basis[i]) ** e
    return out


def extend_r(b: NALineBundle, lam: Sequence[int]) -> ValuedMonomial:
    """The value of r at an arbitrary element of the cover lattice."""
    coeffs = b.lattice.coordinates(tuple(int(x) for x in lam))
    if any(c.denominator != 1 for c in coeffs):
        raise NotInLattice("element is not in the cover lattice")
    return _extend_from_basis(
        b.ns, b.lattice.generators(), b.r_basis, [int(c) for c in coeffs]
    )


def restrict_na(b: NALineBundle, sub: Sublattice) -> NALineBundle:
    """The same factor on a finer cover: r evaluated on the sublattice basis."""
    if not b.lattice.contains_lattice(sub):
        raise NotContained("restriction target is not contained in the cover lattice")
    values = tuple(extend_r(b, v) for v in sub.generators())
    return NALineBundle(b.ns, sub, values)


def represent_on(b: NALineBundle, target: Sublattice) -> NALineBundle:
    """A factor on another cover lattice with the same restriction to the
    intersection (hence the same bundle class).

    Works through a basis of the target adapted to the intersection and takes
    exact roots of the restricted values; raises ValueError when a required
    root does not exist in the monomial model.
    """
    inter = b.lattice & target
    coords = (target.mat_inv @ inter.mat).int_rows()
    u, d, _ = snf(coords)
    adapted_cols = target.mat @ Mat(u).inv()
    adapted = [
        tuple(int(x) for x in adapted_cols.col(j)) for j in range(target.ambient_rank)
    ]
    values = []
    for i, w in enumerate(adapted):
        k = d[i][i]
        scaled = tuple(k * x for x in w)
        chi = extend_r(b, scaled)
        corr = b.ns.gm_pairing(w, w) ** (k * (k - 1) // 2)
        values.append((chi / corr).root_pow(Fraction(1, k)))
    hnf_coeff = u  # Hermite basis of target in adapted coordinates
    r_basis = tuple(
        _extend_from_basis(b.ns, adapted, values, [row[j] for row in hnf_coeff])
        for j in range(target.ambient_rank)
    )
    return NALineBundle(b.ns, target, r_basis)


def tropicalize_line_bundle(b: NALineBundle) -> TropLineBundle:
    """Valuation of the factor: l = v(r) - (1/2) [., .]-real on the basis."""
    torus = b.ns.torus.trop()
    l = tuple(
        extend_r(b, v).valuation() - Fraction(1, 2) * b.ns.real_pairing(v, v)
        for v in b.lattice.generators()
    )
    return TropLineBundle(torus, b.lattice, b.ns.matrix, l)


def tropicalize_simple(
    b: NALineBundle, bound: int = SUBGROUP_ENUMERATION_BOUND
) -> ModuliPoint:
    """Moduli coordinate of the simple bundle presented by b.

    Restricts to the symmetry lattice of the class, tropicalizes, and reduces
    into the canonical coordinates; the output does not depend on which
    admissible cover was used to present the bundle.
    """
    if b.lattice not in b.ns.admissible_lattices(bound):
        raise NotAdmissible("cover lattice is not admissible for the class")
    gamma = b.ns.symmetry
    s = tropicalize_line_bundle(restrict_na(b, gamma))
    return moduli_point(s, gamma, b.ns.matrix)


def translate_na(b: NALineBundle, x: MultiplicativePoint) -> NALineBundle:
    """Translate by a multiplicative point: r picks up <x, class(.)>."""
    if x.g != b.ns.torus.g:
        raise AmbientMismatch("point rank differs from the torus rank")
    values = []
    for v, r in zip(b.lattice.generators(), b.r_basis):
        image = b.ns.matrix.mul_vec(tuple(Fraction(c) for c in v))
        m = tuple(int(c) for c in image)
        values.append(r * eval_character(x, m))
    return NALineBundle(b.ns, b.lattice, tuple(values))


def bundle_times_character(b: NALineBundle, chi: NACharacter) -> NALineBundle:
    """Tensor with the degree-zero line bundle of a character."""
    values = tuple(
        r * chi.value(v) for r, v in zip(b.r_basis, b.lattice.generators())
    )
    return NALineBundle(b.ns, b.lattice, values)


# ---------------------------------------------------------------------------
# Semisimple representations and the commuting square
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NASemisimpleRep:
    """A multiset of rank-one representations, kept canonically sorted."""

    characters: tuple[NACharacter, ...]

    def __post_init__(self):
        if not self.characters:
            raise SizeMismatch("a representation needs at least one character")
        g = self.characters[0].g
        if any(c.g != g for c in self.characters):
            raise SizeMismatch("characters have different ranks")
        object.__setattr__(
            self,
            "characters",
            tuple(sorted(self.characters, key=lambda c: c.sort_key)),
        )

    @property
    def r(self) -> int:
        return len(self.characters)

    @property
    def g(self) -> int:
        return self.characters[0].g


def bundles_from_rep(rep: NASemisimpleRep, torus: NATorus) -> tuple[NALineBundle, ...]:
    """One degree-zero line bundle on the full lattice per character."""
    if torus.g != rep.g:
        raise AmbientMismatch("torus rank differs from the representation rank")
    zero = NSClass(torus, Mat.zeros(torus.g, torus.g))
    full = Sublattice.full(torus.g)
    return tuple(NALineBundle(zero, full, c.values) for c in rep.characters)


def trop_rep(rep: NASemisimpleRep) -> TropRepresentation:
    """Entrywise valuation: a diagonal tropical representation."""
    r, g = rep.r, rep.g
    idperm = tuple(range(r))
    images = []
    for j in range(g):
        d = tuple(c.values[j].valuation() for c in rep.characters)
        images.append(TropGLElement(idperm, d))
    return TropRepresentation(tuple(images))


def characters_equal_mod_m(c1: NACharacter, c2: NACharacter, torus: NATorus) -> bool:
    """Whether the characters present the same degree-zero bundle.

    True when the ratio is <., m> for an integral character m, found by
    solving the valuation system and verified by exact monomial equality.
    """
    if c1.g != c2.g or c1.g != torus.g:
        raise SizeMismatch("character ranks differ")
    ratios = tuple(b / a for a, b in zip(c1.values, c2.values))
    vals = tuple(r.valuation() for r in ratios)
    m = torus.v.T.solve(vals)
    if any(x.denominator != 1 for x in m):
        return False
    m_int = tuple(int(x) for x in m)
    return all(
        eval_character(gen, m_int) == r for gen, r in zip(torus.generators, ratios)
    )


def verify_commuting_square(
    rep: NASemisimpleRep, torus: NATorus
) -> tuple[bool, list[ModuliPoint], list[ModuliPoint]]:
    """Compare tropicalizing the bundle against the bundle of the
    tropicalized representation, as canonical moduli-point multisets.

    Both pipelines produce points for (full lattice, zero class) on the same
    real torus; returns the boolean together with both sorted point lists.
    """
    g = torus.g
    zero = Mat.zeros(g, g)
    full = Sublattice.full(g)

    via_na = [
        moduli_point(tropicalize_line_bundle(b), full, zero)
        for b in bundles_from_rep(rep, torus)
    ]
    trop_torus = torus.trop()
    via_trop = [
        moduli_point(s, full, zero)
        for s in bundle_from_rep(trop_rep(rep), trop_torus).summands
    ]
    via_na.sort(key=lambda p: p.coords)
    via_trop.sort(key=lambda p: p.coords)
    return via_na == via_trop, via_na, via_trop
