"""Tropical representations of a period lattice and their bundle counterparts.

An invertible tropical r x r matrix is a generalized permutation matrix: a
permutation together with a rational translation vector.  Commuting tuples of
such elements are representations of the period lattice; they decompose into
induced pieces indexed by the orbits of the permutation action, and each piece
corresponds to a homogeneous line-bundle summand on the cover given by the
orbit stabilizer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bundles import TropLineBundle, TropVectorBundle, _coset_reps
from .errors import NotCommuting, NotInvertible, SizeMismatch
from .lattices import Sublattice, reduce_mod_lattice
from .linalg import Mat
from .nspairings import TropTorus
from .rationals import rat


@dataclass(frozen=True)
class TropGLElement:
    """A permutation with a translation: acts by (Ax)_i = d_i + x at sigma^-1(i).

    perm is stored 0-indexed with perm[i] = sigma(i).
    """

    perm: tuple[int, ...]
    d: tuple[Fraction, ...]

    def __post_init__(self):
        r = len(self.perm)
        if sorted(self.perm) != list(range(r)):
            raise NotInvertible("perm is not a permutation")
        if len(self.d) != r:
            raise SizeMismatch("translation vector length differs from perm size")
        object.__setattr__(self, "d", tuple(rat(x) for x in self.d))

    @property
    def r(self) -> int:
        return len(self.perm)

    @property
    def inv_perm(self) -> tuple[int, ...]:
        out = [0] * self.r
        for i, j in enumerate(self.perm):
            out[j] = i
        return tuple(out)

    def act(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(x) != self.r:
            raise SizeMismatch("vector length differs from element size")
        inv = self.inv_perm
        return tuple(self.d[i] + rat(x[inv[i]]) for i in range(self.r))


def identity(r: int) -> TropGLElement:
    return TropGLElement(tuple(range(r)), (Fraction(0),) * r)


def compose(a: TropGLElement, b: TropGLElement) -> TropGLElement:
    """(sigma, d) o (sigma', d') = (sigma sigma', d + sigma . d')."""
    if a.r != b.r:
        raise SizeMismatch("cannot compose elements of different sizes")
    perm = tuple(a.perm[b.perm[i]] for i in range(a.r))
    a_inv = a.inv_perm
    d = tuple(a.d[i] + b.d[a_inv[i]] for i in range(a.r))
    return TropGLElement(perm, d)


def inverse(a: TropGLElement) -> TropGLElement:
    inv = a.inv_perm
    d = tuple(-a.d[a.perm[i]] for i in range(a.r))
    return TropGLElement(inv, d)


def power(a: TropGLElement, n: int) -> TropGLElement:
    if n < 0:
        return power(inverse(a), -n)
    out = identity(a.r)
    for _ in range(n):
        out = compose(out, a)
    return out


INFINITE = None  # min-plus additive identity in matrix form


def from_matrix(rows: Sequence[Sequence[Fraction | int | str | None]]) -> TropGLElement:
    """Parse a min-plus matrix with one finite entry per row and column.

    The finite entry in row i sits at column sigma^-1(i) and equals d_i.
    """
    r = len(rows)
    if any(len(row) != r for row in rows):
        raise NotInvertible("matrix is not square")
    perm = [-1] * r
    d = [Fraction(0)] * r
    for i, row in enumerate(rows):
        finite = [(j, x) for j, x in enumerate(row) if x is not None]
        if len(finite) != 1:
            raise NotInvertible(f"row {i} must have exactly one finite entry")
        j, x = finite[0]
        if perm[j] != -1:
            raise NotInvertible(f"column {j} has more than one finite entry")
        perm[j] = i
        d[i] = rat(x)
    return TropGLElement(tuple(perm), tuple(d))


def to_matrix(a: TropGLElement) -> list[list[Fraction | None]]:
    rows: list[list[Fraction | None]] = [[None] * a.r for _ in range(a.r)]
    inv = a.inv_perm
    for i in range(a.r):
        rows[i][inv[i]] = a.d[i]
    return rows


@dataclass(frozen=True)
class TropRepresentation:
    """Images of the g period-lattice basis vectors in GL_r of the min-plus semifield."""

    images: tuple[TropGLElement, ...]

    def __post_init__(self):
        if not self.images:
            raise SizeMismatch("a representation needs at least one generator image")
        r = self.images[0].r
        if any(a.r != r for a in self.images):
            raise SizeMismatch("generator images have different sizes")

    @property
    def r(self) -> int:
        return self.images[0].r

    @property
    def g(self) -> int:
        return len(self.images)

    def value(self, a: Sequence[int]) -> TropGLElement:
        """The image of the lattice vector with coordinates a (commuting product)."""
        if len(a) != self.g:
            raise SizeMismatch("coordinate length differs from the number of generators")
        out = identity(self.r)
        for img, e in zip(self.images, a):
            out = compose(out, power(img, int(e)))
        return out


def check_commuting(rep: TropRepresentation) -> bool:
    imgs = rep.images
    for i in range(len(imgs)):
        for j in range(i + 1, len(imgs)):
            if compose(imgs[i], imgs[j]) != compose(imgs[j], imgs[i]):
                return False
    return True


@dataclass(frozen=True)
class OrbitSummand:
    """One indecomposable piece: an orbit, its stabilizer lattice, and the
    rational character of the stabilizer read off at the orbit's base point."""

    orbit: tuple[int, ...]
    lattice: Sublattice
    l: tuple[Fraction, ...]


def _require_commuting(rep: TropRepresentation) -> None:
    if not check_commuting(rep):
        raise NotCommuting("generator images do not commute")


def decompose_rep(rep: TropRepresentation) -> tuple[OrbitSummand, ...]:
    """Split into induced pieces over the orbits of the permutation action.

    For each orbit with base point p (its smallest index), the stabilizer
    lattice is generated by the Schreier vectors v_q + e_i - v_(sigma_i q) of
    a breadth-first spanning tree, and the covector value at a stabilizer
    element is the translation component at p of its image.
    """
    _require_commuting(rep)
    g, r = rep.g, rep.r
    perms = [a.perm for a in rep.images]
    seen = [False] * r
    out = []
    for p in range(r):
        if seen[p]:
            continue
        paths: dict[int, tuple[int, ...]] = {p: (0,) * g}
        queue = deque([p])
        seen[p] = True
        while queue:
            q = queue.popleft()
            for i in range(g):
                q2 = perms[i][q]
                if q2 not in paths:
                    v = list(paths[q])
                    v[i] += 1
                    paths[q2] = tuple(v)
                    seen[q2] = True
                    queue.append(q2)
        orbit = tuple(sorted(paths))
        gens = []
        for q in orbit:
            for i in range(g):
                v = list(paths[q])
                v[i] += 1
                w = paths[perms[i][q]]
                gens.append(tuple(a - b for a, b in zip(v, w)))
        lat = Sublattice.from_generators(gens)
        l = []
        for b in lat.generators():
            image = rep.value(b)
            if image.perm[p] != p:
                raise NotCommuting("stabilizer element does not fix the base point")
            l.append(image.d[p])
        out.append(OrbitSummand(orbit, lat, tuple(l)))
    return tuple(out)


def canonical_form(
    rep: TropRepresentation,
) -> tuple[tuple[Sublattice, tuple[Fraction, ...]], ...]:
    """Conjugation-invariant form: the sorted multiset of (stabilizer, covector)."""
    pieces = [(s.lattice, s.l) for s in decompose_rep(rep)]
    return tuple(sorted(pieces, key=lambda p: (p[0].basis, p[1])))


def stratum(rep: TropRepresentation) -> tuple[Sublattice, ...]:
    """The multiset of orbit stabilizer lattices, canonically ordered."""
    lats = [s.lattice for s in decompose_rep(rep)]
    return tuple(sorted(lats, key=lambda lat: lat.basis))


def bundle_from_rep(rep: TropRepresentation, torus: TropTorus) -> TropVectorBundle:
    """The homogeneous bundle of a representation: one summand per orbit,
    pushed forward from the stabilizer cover with zero class."""
    if torus.g != rep.g:
        raise SizeMismatch("torus rank differs from the number of generators")
    zero = Mat.zeros(torus.g, torus.g)
    summands = [
        TropLineBundle(torus, s.lattice, zero, s.l) for s in decompose_rep(rep)
    ]
    return TropVectorBundle(torus, tuple(summands))


def conjugate(rep: TropRepresentation, a: TropGLElement) -> TropRepresentation:
    a_inv = inverse(a)
    return TropRepresentation(
        tuple(compose(compose(a, img), a_inv) for img in rep.images)
    )


def rep_from_bundle(e: TropVectorBundle) -> TropRepresentation:
    """A representation whose bundle is the given homogeneous bundle.

    Each summand contributes the block induced from its cover lattice: the
    permutation part shifts canonical coset representatives, and the
    translation part is the covector evaluated on the lattice element closing
    each shift.  Inverse to bundle construction up to equivalence.
    """
    if not e.summands:
        raise SizeMismatch("cannot build a representation from an empty bundle")
    g = e.torus.g
    blocks = []  # per summand: (coset reps, index lookup, summand)
    for s in e.summands:
        reps = _coset_reps(s.lattice)
        blocks.append((reps, {c: k for k, c in enumerate(reps)}, s))
    offsets = []
    total = 0
    for reps, _, _ in blocks:
        offsets.append(total)
        total += len(reps)
    images = []
    for j in range(g):
        perm = [0] * total
        d: list[Fraction] = [Fraction(0)] * total
        for (reps, lookup, s), off in zip(blocks, offsets):
            for k, c in enumerate(reps):
                shifted = tuple(x + (1 if i == j else 0) for i, x in enumerate(c))
                target = tuple(int(x) for x in reduce_mod_lattice(shifted, s.lattice.mat))
                k2 = lookup[target]
                perm[off + k] = off + k2
                closing = tuple(a - b for a, b in zip(shifted, target))
                d[off + k2] = s.l_value(closing)
        images.append(TropGLElement(tuple(perm), tuple(d)))
    return TropRepresentation(tuple(images))
