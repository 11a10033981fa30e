"""JSON wire formats.

Rationals travel as strings "p/q" (plain "p" when integral) so that no float
ever enters the pipeline; integer lattice bases travel as JSON integers.
Every encoder here has a decoder that round-trips losslessly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from .bundles import ModuliPoint, TropLineBundle, TropVectorBundle
from .errors import TropabelError
from .lattices import Sublattice
from .linalg import Mat
from .monomials import MultiplicativePoint, ValuedMonomial
from .naside import NACharacter, NALineBundle, NASemisimpleRep
from .nspairings import NATorus, NSClass, TropTorus
from .rationals import rat, rat_str
from .tropchar import TropGLElement, TropRepresentation


class ScenarioError(TropabelError):
    """Malformed or unresolvable scenario data."""


def rational_to_json(x: Fraction) -> str:
    return rat_str(x)


def rational_from_json(s: Any) -> Fraction:
    if not isinstance(s, (str, int)):
        raise ScenarioError(f"expected a rational string, got {s!r}")
    return rat(s)


def vector_to_json(v: Sequence[Fraction]) -> list[str]:
    return [rat_str(x) for x in v]


def vector_from_json(data: Any) -> tuple[Fraction, ...]:
    if not isinstance(data, list):
        raise ScenarioError(f"expected a list of rationals, got {data!r}")
    return tuple(rational_from_json(x) for x in data)


def matrix_to_json(m: Mat) -> list[list[str]]:
    return [[rat_str(x) for x in row] for row in m.entries]


def matrix_from_json(data: Any) -> Mat:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ScenarioError(f"expected a matrix, got {data!r}")
    return Mat([[rational_from_json(x) for x in row] for row in data])


def lattice_to_json(lat: Sublattice) -> list[list[int]]:
    return [list(row) for row in lat.basis]


def lattice_from_json(data: Any) -> Sublattice:
    if not isinstance(data, list):
        raise ScenarioError(f"expected a lattice basis, got {data!r}")
    return Sublattice(data)


def mono_to_json(m: ValuedMonomial) -> dict[str, str]:
    return {
        "mag": rat_str(m.magnitude),
        "phase": rat_str(m.phase),
        "texp": rat_str(m.t_exponent),
    }


def mono_from_json(data: Any) -> ValuedMonomial:
    if not isinstance(data, dict):
        raise ScenarioError(f"expected a monomial object, got {data!r}")
    return ValuedMonomial(
        rational_from_json(data.get("mag", "1")),
        rational_from_json(data.get("phase", "0")),
        rational_from_json(data.get("texp", "0")),
    )


def point_to_json(p: MultiplicativePoint) -> list[dict[str, str]]:
    return [mono_to_json(c) for c in p.coords]


def point_from_json(data: Any) -> MultiplicativePoint:
    if not isinstance(data, list):
        raise ScenarioError(f"expected a point (list of monomials), got {data!r}")
    return MultiplicativePoint(tuple(mono_from_json(c) for c in data))


def torus_to_json(t: TropTorus | NATorus) -> dict[str, Any]:
    if isinstance(t, NATorus):
        return {"g": t.g, "generators": [point_to_json(p) for p in t.generators]}
    return {"g": t.g, "v": matrix_to_json(t.v)}


def torus_from_json(data: Any) -> TropTorus | NATorus:
    if not isinstance(data, dict):
        raise ScenarioError(f"expected a torus object, got {data!r}")
    if "generators" in data:
        return NATorus(tuple(point_from_json(p) for p in data["generators"]))
    if "v" in data:
        return TropTorus(matrix_from_json(data["v"]))
    raise ScenarioError("torus needs either 'generators' or 'v'")


def summand_to_json(s: TropLineBundle) -> dict[str, Any]:
    return {
        "lattice": lattice_to_json(s.lattice),
        "H": matrix_to_json(s.ns),
        "l": vector_to_json(s.l),
    }


def summand_from_json(data: Any, torus: TropTorus) -> TropLineBundle:
    if not isinstance(data, dict):
        raise ScenarioError(f"expected a summand object, got {data!r}")
    return TropLineBundle(
        torus,
        lattice_from_json(data["lattice"]),
        matrix_from_json(data["H"]),
        vector_from_json(data["l"]),
    )


def bundle_to_json(e: TropVectorBundle) -> dict[str, Any]:
    return {"summands": [summand_to_json(s) for s in e.summands]}


def bundle_from_json(data: Any, torus: TropTorus) -> TropVectorBundle:
    if not isinstance(data, dict) or "summands" not in data:
        raise ScenarioError(f"expected a bundle object, got {data!r}")
    summands = tuple(summand_from_json(s, torus) for s in data["summands"])
    return TropVectorBundle(torus, summands)


def moduli_point_to_json(p: ModuliPoint) -> dict[str, Any]:
    return {
        "gamma": lattice_to_json(p.gamma),
        "H": matrix_to_json(p.ns),
        "coords": vector_to_json(p.coords),
    }


def gl_element_to_json(a: TropGLElement) -> dict[str, Any]:
    return {"perm": [a.perm[i] + 1 for i in range(a.r)], "d": vector_to_json(a.d)}


def gl_element_from_json(data: Any) -> TropGLElement:
    if not isinstance(data, dict) or "perm" not in data:
        raise ScenarioError(f"expected a tropical matrix object, got {data!r}")
    perm = tuple(int(i) - 1 for i in data["perm"])
    d = vector_from_json(data.get("d", ["0"] * len(perm)))
    return TropGLElement(perm, d)


def rep_to_json(rep: TropRepresentation) -> dict[str, Any]:
    return {"images": [gl_element_to_json(a) for a in rep.images]}


def rep_from_json(data: Any) -> TropRepresentation:
    if not isinstance(data, dict) or "images" not in data:
        raise ScenarioError(f"expected a representation object, got {data!r}")
    return TropRepresentation(tuple(gl_element_from_json(a) for a in data["images"]))


def character_to_json(c: NACharacter) -> list[dict[str, str]]:
    return [mono_to_json(v) for v in c.values]


def character_from_json(data: Any) -> NACharacter:
    if not isinstance(data, list):
        raise ScenarioError(f"expected a character (list of monomials), got {data!r}")
    return NACharacter(tuple(mono_from_json(v) for v in data))


def na_bundle_to_json(b: NALineBundle) -> dict[str, Any]:
    return {
        "lattice": lattice_to_json(b.lattice),
        "H": matrix_to_json(b.ns.matrix),
        "r": [mono_to_json(v) for v in b.r_basis],
    }


def na_bundle_from_json(data: Any, torus: NATorus, default_ns: Mat | None) -> NALineBundle:
    if not isinstance(data, dict) or "r" not in data:
        raise ScenarioError(f"expected a line-bundle object, got {data!r}")
    if "H" in data:
        h = matrix_from_json(data["H"])
    elif default_ns is not None:
        h = default_ns
    else:
        raise ScenarioError("line bundle needs 'H' (no scenario ns_class to fall back on)")
    lattice = (
        lattice_from_json(data["lattice"])
        if "lattice" in data
        else Sublattice.full(torus.g)
    )
    return NALineBundle(
        NSClass(torus, h), lattice, tuple(mono_from_json(v) for v in data["r"])
    )


def na_rep_to_json(rep: NASemisimpleRep) -> dict[str, Any]:
    return {"characters": [character_to_json(c) for c in rep.characters]}


def na_rep_from_json(data: Any) -> NASemisimpleRep:
    if not isinstance(data, dict) or "characters" not in data:
        raise ScenarioError(f"expected a semisimple representation, got {data!r}")
    return NASemisimpleRep(tuple(character_from_json(c) for c in data["characters"]))
