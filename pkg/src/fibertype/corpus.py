"""Named example divisors and a seeded random generator over the projective line."""
from __future__ import annotations

import random
from fractions import Fraction

from .base import Base
from .divisor import PolyhedralDivisor, is_proper
from .lattice import Cone

POINT_POOL = ("0", "1", "-1", "2", "1/2", "inf")


def trivial_ml(n: int = 2) -> PolyhedralDivisor:
    """``((1,...,1) + orthant)·[inf]`` on the projective line."""
    sigma = Cone.orthant(n)
    return PolyhedralDivisor.make(Base.proj_line(), sigma, {"inf": [(1,) * n]})


def graded_plane() -> PolyhedralDivisor:
    """``k[x, y]`` graded by the degree in ``y``: affine line base, rank one, zero divisor."""
    return PolyhedralDivisor.make(Base.affine_line(), Cone.orthant(1), {})


def toric_plane() -> PolyhedralDivisor:
    """``k[x, y]`` as a toric ring over a point."""
    return PolyhedralDivisor.make(Base.point(), Cone.orthant(2), {})


def zero_on_line(n: int = 2) -> PolyhedralDivisor:
    """Every coefficient equal to the tail: ``D(m) = 0`` for all ``m``."""
    return PolyhedralDivisor.make(Base.proj_line(), Cone.orthant(n), {})


def trivial_tail(n: int = 2) -> PolyhedralDivisor:
    return PolyhedralDivisor.make(Base.proj_line(), Cone.zero(n), {})


def genus_one_degree_zero() -> PolyhedralDivisor:
    """``D(m) = m_1 [P] - m_1 [Q]`` on a genus one curve; degree zero, not zero."""
    sigma = Cone.orthant(2)
    return PolyhedralDivisor.make(Base.abstract_curve(1), sigma,
                                  {"label:P": [(1, 0)], "label:Q": [(-1, 0)]})


NAMED = {
    "trivial_ml_2": lambda: trivial_ml(2),
    "trivial_ml_3": lambda: trivial_ml(3),
    "graded_plane": graded_plane,
    "toric_plane": toric_plane,
    "zero_on_line": zero_on_line,
    "trivial_tail": trivial_tail,
    "genus_one_degree_zero": genus_one_degree_zero,
}

_TAILS = [
    [(1, 0), (0, 1)],
    [(1, 0), (1, 2)],
    [(1, 1), (-1, 1)],
    [(2, -1), (-1, 2)],
    [(1, 0), (1, 3)],
    [(0, 1), (3, -2)],
    [(1, 0)],
    [(1, -1)],
]


def random_divisor(rng: random.Random, max_entry: int = 3, max_points: int = 3
                   ) -> PolyhedralDivisor:
    """A rank-two divisor on the projective line with small rational vertices."""
    tail = Cone.from_generators(rng.choice(_TAILS), 2)
    points = rng.sample(POINT_POOL, rng.randint(1, max_points))
    coeffs = {}
    for p in points:
        den = rng.choice((1, 1, 2))
        lim = max_entry * den
        coeffs[p] = [(Fraction(rng.randint(-lim, lim), den), Fraction(rng.randint(-lim, lim), den))
                     for _ in range(rng.randint(1, 3))]
    return PolyhedralDivisor.make(Base.proj_line(), tail, coeffs)


def random_corpus(seed: int = 20241017, proper: int = 30, non_proper: int = 30
                  ) -> list[PolyhedralDivisor]:
    """At least ``proper`` proper and ``non_proper`` non-proper divisors, deterministic."""
    rng = random.Random(seed)
    good, bad = [], []
    seen = set()
    while len(good) < proper or len(bad) < non_proper:
        dd = random_divisor(rng)
        if dd in seen:
            continue
        seen.add(dd)
        if is_proper(dd).proper:
            if len(good) < proper:
                good.append(dd)
        elif len(bad) < non_proper:
            bad.append(dd)
    return good + bad
