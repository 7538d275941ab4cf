"""Exact linear algebra over the dual lattices M, N and rational polyhedral cones.

Vectors are plain tuples (``int`` for lattice vectors, ``Fraction`` for
rational ones). A :class:`Cone` carries its ambient rank and a space tag
(``"M"`` or ``"N"``) and keeps both descriptions in canonical form:

* ``rays`` -- primitive extreme rays of the pointed part ``C ∩ L^⊥``
* ``lineality`` -- canonical basis of the lineality space ``L``
* ``facets`` -- primitive facet normals, projected into ``span(C)``
* ``equations`` -- canonical basis of ``span(C)^⊥``

With this normal form the dual cone is a swap of the two halves, and two
cones are equal iff their normal forms agree.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import NotARay, NotPointed, RankMismatch

Vector = tuple  # tuple[int, ...] or tuple[Fraction, ...]

_DUAL_SPACE = {"M": "N", "N": "M"}


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------

def pairing(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise RankMismatch(f"cannot pair vectors of length {len(u)} and {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def rref(rows: Iterable[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def matrix_rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : row·x = 0 for every row}."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def primitive(v: Sequence) -> tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector (zero stays zero)."""
    fr = [Fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = math.gcd(*ints) if ints else 0
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(x // g for x in ints)


def primitive_line(v: Sequence) -> tuple[int, ...]:
    """Primitive vector spanning the same line, leading nonzero entry positive."""
    p = primitive(v)
    lead = next((x for x in p if x != 0), 0)
    return tuple(-x for x in p) if lead < 0 else p


def canonical_basis(vectors: Sequence[Sequence], ncols: int) -> tuple[tuple[int, ...], ...]:
    """Canonical integral basis of the span: RREF rows made primitive."""
    red, _ = rref(vectors) if vectors else ([], [])
    return tuple(primitive_line(r) for r in red)


def project_onto(v: Sequence, basis: Sequence[Sequence]) -> list[Fraction]:
    """Orthogonal projection of ``v`` onto the orthogonal complement of ``basis``."""
    v = [Fraction(x) for x in v]
    if not basis:
        return v
    # Gram-Schmidt on the basis, exact
    ortho: list[list[Fraction]] = []
    for b in basis:
        w = [Fraction(x) for x in b]
        for o in ortho:
            c = pairing(w, o) / pairing(o, o)
            w = [a - c * x for a, x in zip(w, o)]
        if any(w):
            ortho.append(w)
    for o in ortho:
        c = pairing(v, o) / pairing(o, o)
        v = [a - c * x for a, x in zip(v, o)]
    return v


def to_lattice(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector by a positive integer so it becomes integral."""
    return primitive(v) if any(v) else tuple(0 for _ in v)


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def max_norm(v: Sequence) -> int:
    return max((abs(x) for x in v), default=0)


# ---------------------------------------------------------------------------
# Fourier-Motzkin
# ---------------------------------------------------------------------------

def _normalize_row(row: list[Fraction]) -> tuple[int, ...]:
    return primitive(row)


def fourier_motzkin_facets(gens: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Valid inequalities ``u·x >= 0`` of ``cone(gens)`` that include every facet.

    Projects ``{(x, lam) : x = sum lam_i g_i, lam >= 0}`` onto ``x``.
    Equalities are used first by Gaussian substitution; the remaining
    multipliers are eliminated pairwise with Chernikov's rule pruning rows
    that depend on too many original inequalities.
    """
    k = len(gens)
    # each constraint: (coeffs over x (n) + lam (k), history set); inequalities are >= 0
    eqs = []
    for j in range(n):
        row = [Fraction(0)] * (n + k)
        row[j] = Fraction(1)
        for i, g in enumerate(gens):
            row[n + i] = Fraction(-g[j])
        eqs.append(row)
    ineqs = []
    for i in range(k):
        row = [Fraction(0)] * (n + k)
        row[n + i] = Fraction(1)
        ineqs.append((row, frozenset([i])))

    remaining = list(range(n, n + k))
    # Gaussian elimination of multipliers through the equalities
    for var in list(remaining):
        piv = next((e for e in eqs if e[var] != 0), None)
        if piv is None:
            continue
        eqs.remove(piv)
        c = piv[var]

        def subst(row, piv=piv, c=c, var=var):
            f = row[var] / c
            if f == 0:
                return row
            return [a - f * b for a, b in zip(row, piv)]

        eqs = [subst(e) for e in eqs]
        ineqs = [(subst(r), h) for r, h in ineqs]
        remaining.remove(var)

    eliminated = 0
    for var in remaining:
        pos = [(r, h) for r, h in ineqs if r[var] > 0]
        neg = [(r, h) for r, h in ineqs if r[var] < 0]
        new = [(r, h) for r, h in ineqs if r[var] == 0]
        eliminated += 1
        for (rp, hp), (rn, hn) in itertools.product(pos, neg):
            h = hp | hn
            if len(h) > eliminated + 1:
                continue
            a, b = -rn[var], rp[var]
            new.append(([a * x + b * y for x, y in zip(rp, rn)], h))
        seen = {}
        for r, h in new:
            key = _normalize_row(r)
            if key not in seen or len(h) < len(seen[key][1]):
                seen[key] = (r, h)
        ineqs = list(seen.values())

    out = []
    for r, _ in ineqs:
        x_part = r[:n]
        if any(x_part):
            out.append(_normalize_row(x_part))
    return out


# ---------------------------------------------------------------------------
# cones
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone in canonical double description."""

    rank: int
    space: str
    rays: tuple[tuple[int, ...], ...]
    lineality: tuple[tuple[int, ...], ...]
    facets: tuple[tuple[int, ...], ...]
    equations: tuple[tuple[int, ...], ...]

    # -- construction -----------------------------------------------------

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence], rank: int | None = None,
                        space: str = "N") -> "Cone":
        gens = [primitive(g) for g in gens]
        if rank is None:
            if not gens:
                raise RankMismatch("rank must be given for a cone without generators")
            rank = len(gens[0])
        if any(len(g) != rank for g in gens):
            raise RankMismatch(f"generators must all have length {rank}")
        if space not in _DUAL_SPACE:
            raise ValueError(f"space must be 'M' or 'N', got {space!r}")
        gens = sorted({g for g in gens if any(g)})
        n = rank
        equations = canonical_basis(nullspace(gens, n), n) if gens else \
            tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        dim = n - len(equations)
        if dim == 0:
            return cls(n, space, (), (), (), equations)

        facets = set()
        for u in fourier_motzkin_facets(gens, n):
            p = project_onto(u, equations)
            if not any(p):
                continue
            p = primitive(p)
            tight = [g for g in gens if pairing(p, g) == 0]
            if matrix_rank(tight) == dim - 1:
                facets.add(p)
        facets = tuple(sorted(facets))

        lin_basis = nullspace(list(equations) + list(facets), n)
        lineality = canonical_basis(lin_basis, n)
        pdim = dim - len(lineality)
        rays = set()
        for g in gens:
            p = project_onto(g, lineality)
            if not any(p):
                continue
            p = primitive(p)
            tight = [u for u in facets if pairing(u, p) == 0]
            if matrix_rank(tight) == pdim - 1:
                rays.add(p)
        return cls(n, space, tuple(sorted(rays)), lineality, facets, equations)

    @classmethod
    def from_inequalities(cls, ineqs: Iterable[Sequence], rank: int, space: str = "N") -> "Cone":
        """The cone ``{x : u·x >= 0 for every u}`` living in ``space``."""
        return cls.from_generators(ineqs, rank, _DUAL_SPACE[space]).dual()

    @classmethod
    def zero(cls, rank: int, space: str = "N") -> "Cone":
        return cls.from_generators([], rank, space)

    @classmethod
    def full(cls, rank: int, space: str = "N") -> "Cone":
        return cls.zero(rank, _DUAL_SPACE[space]).dual()

    @classmethod
    def orthant(cls, rank: int, space: str = "N") -> "Cone":
        return cls.from_generators(
            [tuple(int(i == j) for j in range(rank)) for i in range(rank)], rank, space)

    # -- views --------------------------------------------------------------

    def dual(self) -> "Cone":
        return Cone(self.rank, _DUAL_SPACE[self.space], self.facets, self.equations,
                    self.rays, self.lineality)

    @property
    def generators(self) -> tuple[tuple[int, ...], ...]:
        neg = tuple(tuple(-x for x in v) for v in self.lineality)
        return self.rays + self.lineality + neg

    @property
    def inequalities(self) -> tuple[tuple[int, ...], ...]:
        neg = tuple(tuple(-x for x in v) for v in self.equations)
        return self.facets + self.equations + neg

    @property
    def dim(self) -> int:
        return self.rank - len(self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @cached_property
    def relint_point(self) -> tuple[int, ...]:
        """A lattice point in the relative interior (sum of the rays)."""
        p = tuple(0 for _ in range(self.rank))
        for r in self.rays:
            p = vec_add(p, r)
        return p

    def contains(self, v: Sequence) -> bool:
        self._check(v)
        return all(pairing(u, v) >= 0 for u in self.facets) and \
            all(pairing(u, v) == 0 for u in self.equations)

    __contains__ = contains

    def in_relint(self, v: Sequence) -> bool:
        self._check(v)
        return all(pairing(u, v) > 0 for u in self.facets) and \
            all(pairing(u, v) == 0 for u in self.equations)

    def intersect(self, other: "Cone") -> "Cone":
        if (self.rank, self.space) != (other.rank, other.space):
            raise RankMismatch("cones live in different spaces")
        return Cone.from_inequalities(self.inequalities + other.inequalities,
                                      self.rank, self.space)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def _check(self, v):
        if len(v) != self.rank:
            raise RankMismatch(f"vector of length {len(v)} in a rank {self.rank} cone")

    def __repr__(self):
        return f"Cone({self.space}, rank={self.rank}, rays={list(self.rays)}, " \
               f"lineality={list(self.lineality)})"


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def dual_cone(c: Cone) -> Cone:
    return c.dual()


def rays(c: Cone) -> list[tuple[int, ...]]:
    """Primitive extreme rays in lexicographic order."""
    if not c.is_pointed:
        raise NotPointed(f"cone has a lineality space of dimension {len(c.lineality)}")
    return list(c.rays)


def face_dual_to_ray(sigma: Cone, rho: Sequence[int]) -> Cone:
    """The face ``sigma^vee ∩ rho^⊥`` of the dual cone."""
    rho = tuple(rho)
    if rho not in rays(sigma):
        raise NotARay(f"{rho} is not a ray of {sigma!r}")
    d = sigma.dual()
    return Cone.from_generators([g for g in d.generators if pairing(g, rho) == 0],
                                d.rank, d.space)


def contains(c: Cone, v: Sequence) -> bool:
    return c.contains(v)


def in_relint(c: Cone, v: Sequence) -> bool:
    return c.in_relint(v)


def _box(rank: int, bound: int):
    return itertools.product(range(-bound, bound + 1), repeat=rank)


def lattice_points(c: Cone, shift: Sequence | None = None, bound: int = 0) -> list[tuple[int, ...]]:
    """Lattice vectors of max-norm <= bound lying in ``c + shift``, lex order."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    shift = tuple(Fraction(x) for x in shift) if shift is not None else (0,) * c.rank
    c._check(shift)
    return [v for v in _box(c.rank, bound) if c.contains(vec_sub(v, shift))]


def hilbert_basis(c: Cone) -> list[tuple[int, ...]]:
    """Minimal generating set of the monoid ``c ∩ Z^n``, sorted lexicographically.

    Every Hilbert basis element is a ray or lies in the half-open
    parallelepiped of a simplicial subcone, so its max-norm is at most the sum
    of the ``dim`` largest ray norms. Candidates are processed by increasing
    value of a grading strictly positive on ``c - {0}``.
    """
    if not c.is_pointed:
        raise NotPointed("Hilbert basis requires a pointed cone")
    if c.is_zero:
        return []
    norms = sorted((max_norm(r) for r in c.rays), reverse=True)
    box = sum(norms[:c.dim])
    grading = [sum(u[i] for u in c.facets) for i in range(c.rank)]
    if not any(grading):
        # one-dimensional cone without facets cannot happen when pointed; keep safe
        grading = list(c.rays[0])
    cands = [v for v in _box(c.rank, box) if any(v) and c.contains(v)]
    cands.sort(key=lambda v: (pairing(grading, v), v))
    basis: list[tuple[int, ...]] = []
    for v in cands:
        if not any(c.contains(vec_sub(v, h)) for h in basis):
            basis.append(v)
    return sorted(basis)
