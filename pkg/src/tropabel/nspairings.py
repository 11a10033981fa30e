"""Polarization classes on degenerate tori and their pairing lattices.

A torus is presented by its period lattice: either just tropically (positions
of the g lattice generators in N_R) or multiplicatively (g points of (K*)^g in
the monomial model).  A class is a rational g x g matrix H whose column j is
the image of the j-th lattice generator in character coordinates.

From (torus, H) the module computes the two distinguished sublattices — where
H is integral, and where the multiplicative pairing is symmetric against
everything — the torsion pairing between them, the admissible sublattices
sitting between the two, and the dual-side lattices with their index identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from .errors import (
    DimensionMismatch,
    InternalInconsistency,
    InvalidClass,
    NotInLargeLattice,
    NotInSmallLattice,
    SingularLattice,
)
from .lattices import (
    SUBGROUP_ENUMERATION_BOUND,
    FiniteAbelianGroup,
    QLattice,
    Sublattice,
    enumerate_subgroups,
    quotient,
    subgroup_span,
)
from .linalg import Mat, congruence_lattice
from .monomials import MultiplicativePoint, ValuedMonomial, eval_character
from .rationals import rat


@dataclass(frozen=True)
class TropTorus:
    """Real torus N_R/Lambda; column j of v = position of generator j in N_Q."""

    v: Mat

    def __post_init__(self):
        if self.v.n != self.v.m:
            raise DimensionMismatch("period matrix must be square")
        if self.v.det() == 0:
            raise SingularLattice("period matrix must be nonsingular")

    @property
    def g(self) -> int:
        return self.v.n

    def position(self, a: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
        """N_Q-coordinates of the point with lattice coordinates a."""
        return self.v.mul_vec(tuple(rat(x) for x in a))


@dataclass(frozen=True)
class NATorus:
    """Multiplicative torus (K*)^g / Lambda with monomial period generators."""

    generators: tuple[MultiplicativePoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        g = len(self.generators)
        if any(p.g != g for p in self.generators):
            raise DimensionMismatch("generator coordinates must have length g")
        if self.v.det() == 0:
            raise SingularLattice("valuation matrix of the periods is singular")

    @property
    def g(self) -> int:
        return len(self.generators)

    @cached_property
    def v(self) -> Mat:
        # column j = valuations of generator j's coordinates
        return Mat(
            [
                [self.generators[j].coords[i].valuation() for j in range(self.g)]
                for i in range(self.g)
            ]
        )

    def trop(self) -> TropTorus:
        return TropTorus(self.v)

    def embed(self, a: Sequence[int]) -> MultiplicativePoint:
        """The period-lattice point with integer coordinates a."""
        out = MultiplicativePoint(tuple(ValuedMonomial.one() for _ in range(self.g)))
        for gen, e in zip(self.generators, a):
            if e:
                out = out * gen ** int(e)
        return out


Torus = Union[TropTorus, NATorus]


def is_r_symmetric(h: Mat, v: Mat) -> bool:
    """Whether the real pairing V^T @ H is a symmetric matrix."""
    return (v.T @ h).is_symmetric()


def _matrix_denominator(h: Mat) -> int:
    return math.lcm(*(x.denominator for row in h.entries for x in row))


def integrality_lattice(h: Mat) -> Sublattice:
    """Sublattice of lattice vectors whose image under h is integral."""
    g = h.n
    den = _matrix_denominator(h)
    if den == 1:
        return Sublattice.full(g)
    scaled = h.scale(den).int_rows()
    return Sublattice(congruence_lattice(scaled, den))


def dual_integrality_lattice(h: Mat) -> Sublattice:
    """Sublattice of character-dual vectors n with h^T @ n integral."""
    return integrality_lattice(h.T)


def extended_character_lattice(h: Mat) -> QLattice:
    """The character lattice enlarged by the image of h (full period lattice)."""
    g = h.n
    units = [tuple(Fraction(1 if i == j else 0) for i in range(g)) for j in range(g)]
    return QLattice.from_generators(units + [h.col(j) for j in range(g)])


def _h_image(h: Mat, b: Sequence[int | Fraction]) -> list[int]:
    img = h.mul_vec(tuple(rat(x) for x in b))
    if any(x.denominator != 1 for x in img):
        raise NotInLargeLattice(f"h-image {img} is not integral")
    return [int(x) for x in img]


def _pairing(t: NATorus, h: Mat, a: Sequence[int], b: Sequence[int]) -> ValuedMonomial:
    return eval_character(t.embed(a), _h_image(h, b))


@dataclass(frozen=True)
class NSClass:
    """A polarization-type class H over a fixed torus.

    Over a multiplicative torus the constructor additionally requires that
    some integer multiple of H is symmetric for the multiplicative pairing
    (equivalently: the torsion pairing of d*H on basis pairs is genuinely
    torsion).  Without that, the symmetry lattice is not defined.
    """

    torus: Torus
    matrix: Mat

    def __post_init__(self):
        g = self.torus.g
        if (self.matrix.n, self.matrix.m) != (g, g):
            raise DimensionMismatch("class matrix must be g x g")
        if not is_r_symmetric(self.matrix, self.torus.v):
            raise InvalidClass("V^T H is not symmetric")
        if isinstance(self.torus, NATorus):
            d = self._denominator
            hd = self.matrix.scale(d)
            for i in range(g):
                for j in range(i + 1, g):
                    ei = _unit(g, i)
                    ej = _unit(g, j)
                    b = _pairing(self.torus, hd, ei, ej) / _pairing(self.torus, hd, ej, ei)
                    if b.is_torsion() is None:
                        raise InvalidClass(
                            "no integer multiple of H is symmetric for the "
                            "multiplicative pairing on this torus"
                        )

    # -- basic pairings ------------------------------------------------------

    @cached_property
    def _denominator(self) -> int:
        return _matrix_denominator(self.matrix)

    @cached_property
    def gram(self) -> Mat:
        """The real pairing matrix V^T @ H (symmetric by construction)."""
        return self.torus.v.T @ self.matrix

    def real_pairing(self, a: Sequence[int | Fraction], b: Sequence[int | Fraction]) -> Fraction:
        row = self.gram.mul_vec(tuple(rat(x) for x in b))
        return sum((rat(x) * y for x, y in zip(a, row)), Fraction(0))

    def _multiplicative_torus(self) -> NATorus:
        if not isinstance(self.torus, NATorus):
            raise InvalidClass("operation requires a multiplicative torus")
        return self.torus

    def gm_pairing(self, a: Sequence[int], b: Sequence[int]) -> ValuedMonomial:
        """The multiplicative pairing <a, H(b)>; b must land integrally."""
        return _pairing(self._multiplicative_torus(), self.matrix, a, b)

    def torsion_pairing(self, a: Sequence[int], b: Sequence[int]) -> ValuedMonomial:
        """The alternating pairing gm(a,b)/gm(b,a); both args where H is integral."""
        return self.gm_pairing(a, b) / self.gm_pairing(b, a)

    def is_gm_symmetric_on(self, sub: Sublattice) -> bool:
        """Whether the multiplicative pairing is symmetric on the sublattice."""
        gens = sub.generators()
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if not self.torsion_pairing(gens[i], gens[j]).is_one():
                    return False
        return True

    # -- the distinguished lattices ------------------------------------------

    @cached_property
    def integrality(self) -> Sublattice:
        return integrality_lattice(self.matrix)

    @cached_property
    def symmetry(self) -> Sublattice:
        """Vectors pairing symmetrically with the whole integrality lattice."""
        t = self._multiplicative_torus()
        lam = self.integrality
        gens = lam.generators()
        g = len(gens)
        phases = [[Fraction(0)] * g for _ in range(g)]
        for i in range(g):
            for j in range(g):
                b = self.torsion_pairing(gens[j], gens[i])
                if b.is_torsion() is None:
                    raise InternalInconsistency("torsion pairing left the torsion subgroup")
                phases[i][j] = b.phase
        den = math.lcm(*(x.denominator for row in phases for x in row))
        cond = [[int(x * den) for x in row] for row in phases]
        coords = congruence_lattice(cond, den)
        ambient = lam.mat @ Mat(coords)
        return Sublattice(ambient.int_rows())

    @cached_property
    def defect_group(self) -> FiniteAbelianGroup:
        """integrality / symmetry, the finite group carrying the torsion pairing."""
        return quotient(self.integrality, self.symmetry)

    def torsion_pairing_on_defect(
        self, e1: Sequence[int], e2: Sequence[int]
    ) -> ValuedMonomial:
        q = self.defect_group
        return self.torsion_pairing(q.lift(e1), q.lift(e2))

    def admissible_lattices(
        self, bound: int = SUBGROUP_ENUMERATION_BOUND
    ) -> list[Sublattice]:
        """Sublattices between symmetry and integrality whose defect image is a
        maximal isotropic subgroup; all have one common index in Z^g."""
        q = self.defect_group
        subgroup_gens = enumerate_subgroups(q, bound)
        spans = [subgroup_span(q.invariant_factors, gens) for gens in subgroup_gens]
        isotropic = []
        for k, gens in enumerate(subgroup_gens):
            lifts = [q.lift(e) for e in gens]
            if all(
                self.torsion_pairing(x, y).is_one()
                for i, x in enumerate(lifts)
                for y in lifts[i + 1 :]
            ):
                isotropic.append(k)
        maximal = [
            k
            for k in isotropic
            if not any(k2 != k and spans[k] < spans[k2] for k2 in isotropic)
        ]
        lattices = []
        base_gens = self.symmetry.generators()
        for k in maximal:
            lifts = [q.lift(e) for e in subgroup_gens[k]]
            lattices.append(Sublattice.from_generators(base_gens + lifts))
        indices = {lat.index for lat in lattices}
        if len(indices) != 1:
            raise InternalInconsistency("admissible lattices have unequal indices")
        n = indices.pop()
        if n * n != q.order * self.integrality.index**2:
            raise InternalInconsistency("admissible index violates the defect-order identity")
        return sorted(lattices, key=lambda lat: lat.basis)

    def class_rank(self, bound: int = SUBGROUP_ENUMERATION_BOUND) -> int:
        """The common index in Z^g of the admissible sublattices."""
        return self.admissible_lattices(bound)[0].index

    # -- the extended pairing -------------------------------------------------

    def extended_pairing(
        self, gamma: Sequence[int], m0: Sequence[int], lam: Sequence[int]
    ) -> ValuedMonomial:
        """Pairing of gamma (in the symmetry lattice) against m0 + H(lam).

        The value <embed(gamma), m0> * gm(lam, gamma) does not depend on the
        chosen decomposition of the extended character.
        """
        if not self.symmetry.contains(gamma):
            raise NotInSmallLattice(f"{tuple(gamma)} is not in the symmetry lattice")
        t = self._multiplicative_torus()
        part = eval_character(t.embed(gamma), [int(x) for x in m0])
        return part * self.gm_pairing(lam, gamma)


def _unit(g: int, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(g))
