"""Tailed polyhedra ``conv(vertices) + sigma`` and their support functions.

The support function ``h(m) = min <m, Delta>`` is finite exactly on the dual
of the tail, where it is concave and piecewise linear. Its domains of
linearity are the normal cones of the vertices intersected with ``sigma^vee``;
these are the :class:`LinearPiece` objects.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import FaceNotCovered, NotPointed, OutsideDualCone, RankMismatch, TailMismatch
from .lattice import Cone, pairing, vec_add, vec_sub

RationalVector = tuple


def _frac_vec(v: Sequence) -> RationalVector:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class LinearPiece:
    cone: Cone
    vertex: RationalVector

    def functional(self, m: Sequence) -> Fraction:
        return pairing(m, self.vertex)


@dataclass(frozen=True)
class TailedPolyhedron:
    """Minkowski sum of ``conv(vertices)`` and the pointed cone ``tail``.

    Use :meth:`make`; the constructor assumes the vertex list is already
    irredundant and sorted.
    """

    tail: Cone
    vertices: tuple[RationalVector, ...]

    @classmethod
    def make(cls, vertices: Iterable[Sequence], tail: Cone) -> "TailedPolyhedron":
        if tail.space != "N":
            raise RankMismatch("the tail of a polyhedron lives in N")
        if not tail.is_pointed:
            raise NotPointed("the tail cone must be pointed")
        verts = [_frac_vec(v) for v in vertices]
        if not verts:
            raise ValueError("a tailed polyhedron needs at least one vertex")
        n = tail.rank
        if any(len(v) != n for v in verts):
            raise RankMismatch(f"vertices must have length {n}")
        if len(verts) > 1:
            verts = _extreme_vertices(verts, tail)
        return cls(tail, tuple(sorted(set(verts))))

    @classmethod
    def point(cls, p: Sequence, tail: Cone) -> "TailedPolyhedron":
        return cls.make([p], tail)

    @classmethod
    def tail_only(cls, tail: Cone) -> "TailedPolyhedron":
        return cls.make([(0,) * tail.rank], tail)

    @property
    def rank(self) -> int:
        return self.tail.rank

    @property
    def is_tail_only(self) -> bool:
        return len(self.vertices) == 1 and not any(self.vertices[0])

    @cached_property
    def dual_tail(self) -> Cone:
        return self.tail.dual()

    def support(self, m: Sequence) -> Fraction:
        """``h(m)`` without the domain check."""
        return min(pairing(m, v) for v in self.vertices)

    def contains(self, x: Sequence) -> bool:
        """Membership of a point of ``N_Q`` (via the support function)."""
        # h is linear on each piece, so the generators of the pieces suffice
        return all(pairing(u, x) >= self.support(u) for u in self._test_directions)

    @cached_property
    def _test_directions(self) -> tuple:
        return tuple({g for p in self.pieces for g in p.cone.generators})

    @cached_property
    def pieces(self) -> tuple[LinearPiece, ...]:
        return tuple(_compute_pieces(self))

    def __str__(self):
        vs = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"conv{{{vs}}} + tail{list(self.tail.rays)}"


def _extreme_vertices(verts: list[RationalVector], tail: Cone) -> list[RationalVector]:
    """Vertices of ``conv(verts) + tail`` via the homogenized cone."""
    n = tail.rank
    gens = [tuple(v) + (Fraction(1),) for v in verts]
    gens += [tuple(r) + (0,) for r in tail.rays]
    hom = Cone.from_generators(gens, n + 1)
    return [tuple(Fraction(x, r[-1]) for x in r[:-1]) for r in hom.rays if r[-1] > 0]


def _compute_pieces(delta: TailedPolyhedron) -> list[LinearPiece]:
    dual = delta.dual_tail
    n = delta.rank
    if len(delta.vertices) == 1:
        return [LinearPiece(dual, delta.vertices[0])]
    out = []
    for v in delta.vertices:
        ineqs = list(dual.inequalities)
        ineqs += [vec_sub(w, v) for w in delta.vertices if w != v]
        cell = Cone.from_inequalities(ineqs, n, "M")
        if cell.dim == n:
            out.append(LinearPiece(cell, v))
    return out


def support_eval(delta: TailedPolyhedron, m: Sequence) -> Fraction:
    if len(m) != delta.rank:
        raise RankMismatch(f"degree of length {len(m)} for a rank {delta.rank} polyhedron")
    if not delta.dual_tail.contains(m):
        raise OutsideDualCone(f"{tuple(m)} is not in the dual of the tail")
    return delta.support(m)


def linear_pieces(delta: TailedPolyhedron) -> list[LinearPiece]:
    return list(delta.pieces)


def piece_containing_face(delta: TailedPolyhedron, tau: Cone) -> LinearPiece:
    """The piece whose cone contains the whole face ``tau``.

    Candidates are the pieces containing a relative interior point of ``tau``;
    the chosen one must contain every generator of ``tau``. When the support
    function is not linear on ``tau`` no piece qualifies and
    :class:`FaceNotCovered` is raised.
    """
    if tau.rank != delta.rank or tau.space != "M":
        raise RankMismatch("tau must be a cone in M of the same rank")
    q = tau.relint_point
    for piece in delta.pieces:
        if piece.cone.contains(q) and piece.cone.contains_cone(tau):
            return piece
    raise FaceNotCovered(f"no linear piece of {delta} contains the face {tau!r}")


def minkowski_sum(a: TailedPolyhedron, b: TailedPolyhedron) -> TailedPolyhedron:
    if a.tail != b.tail:
        raise TailMismatch("Minkowski sum needs equal tails")
    return TailedPolyhedron.make([vec_add(u, v) for u in a.vertices for v in b.vertices], a.tail)


def refine(polys: Sequence[TailedPolyhedron], ambient: Cone) -> list[Cone]:
    """Cells of the common refinement of the pieces, restricted to ``ambient``.

    Only cells of the same dimension as ``ambient`` are kept; every support
    function in ``polys`` is linear on each returned cell, and the cells
    cover ``ambient``.
    """
    cells = [ambient]
    for delta in polys:
        if len(delta.pieces) == 1:
            continue
        nxt: list[Cone] = []
        for cell in cells:
            for piece in delta.pieces:
                if piece.cone.contains_cone(cell):
                    cut = cell
                else:
                    cut = cell.intersect(piece.cone)
                if cut.dim == ambient.dim and cut not in nxt:
                    nxt.append(cut)
        cells = nxt
    return cells
