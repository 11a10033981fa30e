"""Rational scalars.

The whole library computes over Q, represented by ``fractions.Fraction``.
These helpers centralize parsing/formatting of the "p/q" wire format so no
float ever enters the pipeline.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def rat(x: int | str | Fraction) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact rational.

    Floats are rejected on purpose: they have no place in an exact pipeline.
    """
    if isinstance(x, float):
        raise TypeError("floats are not allowed; pass an int, Fraction, or 'p/q' string")
    return Fraction(x)


def rat_str(x: Fraction) -> str:
    # Fraction.__str__ is already canonical: "3", "-1/2", ...
    return str(Fraction(x))


def rat_vector(xs: Iterable[int | str | Fraction]) -> tuple[Fraction, ...]:
    return tuple(rat(x) for x in xs)


def frac_mod_1(x: Fraction) -> Fraction:
    """Representative of x in [0, 1)."""
    return x - (x.numerator // x.denominator)


def lcm_denominator(xs: Sequence[Fraction]) -> int:
    return math.lcm(*(x.denominator for x in xs)) if xs else 1
