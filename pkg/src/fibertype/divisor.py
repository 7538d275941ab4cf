"""Polyhedral divisors ``D = sum Delta_H . H`` and their graded rings.

The ring ``A[Y, D] = ⊕_{m ∈ σ^∨_M} A_m χ^m`` has graded pieces
``A_m = H^0(Y, O(D(m)))``. Elements here are homogeneous ``f·χ^m`` or finite
sums of them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .base import (
    Base,
    BaseKind,
    INF,
    QDivisor,
    RationalSection,
    SectionDimension,
    degree,
    h0,
    is_semiample,
    parse_point,
    point_key,
    round_down,
    section_basis,
    section_in,
)
from .errors import (
    FibertypeError,
    MembershipViolation,
    NotPointed,
    OutsideDualCone,
    RankMismatch,
    TailMismatch,
    Unsupported,
)
from .lattice import Cone, hilbert_basis, max_norm, pairing, rref, vec_add
from .polyhedra import TailedPolyhedron, refine

Degree = tuple


# ---------------------------------------------------------------------------
# the divisor
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyhedralDivisor:
    base: Base
    tail: Cone
    coeffs: tuple[tuple[object, TailedPolyhedron], ...]

    @classmethod
    def make(cls, base: Base, tail: Cone,
             coeffs: Mapping[object, TailedPolyhedron | Iterable[Sequence]] | None = None
             ) -> "PolyhedralDivisor":
        """Build a divisor; coefficients may be polyhedra or vertex lists."""
        if tail.space != "N":
            raise RankMismatch("the tail cone lives in N")
        if not tail.is_pointed:
            raise NotPointed("the tail cone must be pointed")
        out = {}
        for p, delta in (coeffs or {}).items():
            p = base.check_point(parse_point(p))
            if not isinstance(delta, TailedPolyhedron):
                delta = TailedPolyhedron.make(delta, tail)
            if delta.tail != tail:
                raise TailMismatch(f"coefficient at {p} has a different tail")
            if p in out:
                raise FibertypeError(f"duplicate coefficient at {p}")
            if not delta.is_tail_only:
                out[p] = delta
        return cls(base, tail, tuple(sorted(out.items(), key=lambda kv: point_key(kv[0]))))

    @property
    def rank(self) -> int:
        return self.tail.rank

    @cached_property
    def weight_cone(self) -> Cone:
        return self.tail.dual()

    @property
    def polyhedra(self) -> list[TailedPolyhedron]:
        return [d for _, d in self.coeffs]

    def coefficient(self, p) -> TailedPolyhedron:
        p = parse_point(p)
        for q, d in self.coeffs:
            if q == p:
                return d
        return TailedPolyhedron.tail_only(self.tail)

    def check_degree(self, m: Sequence) -> tuple:
        m = tuple(m)
        if len(m) != self.rank:
            raise RankMismatch(f"degree {m} does not have length {self.rank}")
        if not self.weight_cone.contains(m):
            raise OutsideDualCone(f"{m} is not in the weight cone")
        return m

    def __str__(self):
        terms = " + ".join(f"({d})*[{p}]" for p, d in self.coeffs) or "0"
        return f"{terms} on {self.base}"


def evaluate(dd: PolyhedralDivisor, m: Sequence) -> QDivisor:
    m = dd.check_degree(m)
    return QDivisor.from_dict(dd.base, {p: d.support(m) for p, d in dd.coeffs})


def _evaluate_unchecked(dd: PolyhedralDivisor, m: Sequence) -> QDivisor:
    return QDivisor.from_dict(dd.base, {p: d.support(m) for p, d in dd.coeffs})


def dimension(dd: PolyhedralDivisor) -> int:
    return dd.rank + dd.base.dim


# ---------------------------------------------------------------------------
# properness
# ---------------------------------------------------------------------------

def tri_and(values: Iterable[bool | None]) -> bool | None:
    out: bool | None = True
    for v in values:
        if v is False:
            return False
        if v is None:
            out = None
    return out


@dataclass(frozen=True)
class ProperReport:
    proper: bool | None
    semiample: bool | None
    big: bool
    q_cartier: bool
    witnesses: tuple[tuple[str, Degree], ...] = ()


def degree_cells(dd: PolyhedralDivisor, ambient: Cone) -> list[Cone]:
    """Cells of ``ambient`` on which ``m -> D(m)`` is linear."""
    return refine(dd.polyhedra, ambient)


def big_on_relint(dd: PolyhedralDivisor, ambient: Cone) -> tuple[bool, Degree | None]:
    """Whether ``D(m)`` is big for every ``m`` in the relative interior of ``ambient``.

    On curves bigness is ``deg D(m) > 0``. The degree is linear on each cell,
    so it is nonnegative on ``ambient`` iff it is nonnegative on the cell
    generators, and its zero set is a union of faces of cells. A face meets
    the relative interior iff the sum of its generators does.
    Returns the verdict and a witness degree when it fails.
    """
    if dd.base.is_affine:
        return True, None
    for cell in degree_cells(dd, ambient):
        zeros = []
        for g in cell.generators:
            d = degree(_evaluate_unchecked(dd, g))
            if d < 0:
                return False, g
            if d == 0:
                zeros.append(g)
        z = tuple(sum(c) for c in zip(*zeros)) if zeros else None
        if z is not None and ambient.in_relint(z):
            return False, z
    if ambient.is_zero:
        return False, ambient.relint_point
    return True, None


def semiample_everywhere(dd: PolyhedralDivisor) -> tuple[bool | None, Degree | None]:
    """Whether ``D(m)`` is semiample for every ``m`` in the weight cone.

    Degrees are linear on cells, so checking the cell generators decides the
    sign everywhere. A degree-zero value is undecided on positive genus unless
    the divisor itself vanishes along the whole zero face.
    """
    if dd.base.is_affine:
        return True, None
    verdict: bool | None = True
    witness = None
    for cell in degree_cells(dd, dd.weight_cone):
        for g in cell.generators:
            v = is_semiample(dd.base, _evaluate_unchecked(dd, g))
            if v is False:
                return False, g
            if v is None and verdict is True:
                verdict, witness = None, g
    return verdict, witness


def is_proper(dd: PolyhedralDivisor) -> ProperReport:
    semi, w_semi = semiample_everywhere(dd)
    big, w_big = big_on_relint(dd, dd.weight_cone)
    witnesses = []
    if w_semi is not None:
        witnesses.append(("semiample", w_semi))
    if w_big is not None:
        witnesses.append(("big", w_big))
    return ProperReport(tri_and([semi, big]), semi, big, True, tuple(witnesses))


# ---------------------------------------------------------------------------
# ring elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HomogeneousElement:
    """``f·χ^m``; the zero element has ``zero=True`` and no degree."""

    section: RationalSection
    degree: Degree | None
    zero: bool = False
    owner: PolyhedralDivisor | None = field(default=None, repr=False)

    @classmethod
    def zero_element(cls, owner: PolyhedralDivisor | None = None) -> "HomogeneousElement":
        return cls(RationalSection(0), None, True, owner)

    def __eq__(self, other):
        if not isinstance(other, HomogeneousElement):
            return NotImplemented
        if self.zero or other.zero:
            return self.zero and other.zero
        return self.degree == other.degree and self.section == other.section

    def __hash__(self):
        return hash((self.zero, self.degree, str(self.section)))

    def __str__(self):
        if self.zero:
            return "0"
        return f"({self.section})*chi^{list(self.degree)}"


def element(dd: PolyhedralDivisor, f, m: Sequence) -> HomogeneousElement:
    """Validated homogeneous element ``f·χ^m``; a zero section gives zero."""
    m = dd.check_degree(tuple(int(x) for x in m))
    f = RationalSection(f)
    if f.is_zero():
        return HomogeneousElement.zero_element(dd)
    if not _member(dd, f, m):
        raise MembershipViolation(f"{f} is not a section of D({list(m)}) = {evaluate(dd, m)}")
    return HomogeneousElement(f, m, False, dd)


def _member(dd: PolyhedralDivisor, f: RationalSection, m: Degree) -> bool:
    if dd.base.kind is BaseKind.ABSTRACT_CURVE:
        raise Unsupported("abstract curves carry no section arithmetic")
    return section_in(f, _evaluate_unchecked(dd, m))


def multiply(dd: PolyhedralDivisor, a: HomogeneousElement, b: HomogeneousElement
             ) -> HomogeneousElement:
    if a.zero or b.zero:
        return HomogeneousElement.zero_element(dd)
    m = vec_add(a.degree, b.degree)
    f = a.section * b.section
    if not _member(dd, f, m):
        raise MembershipViolation(f"product {f} falls outside A_{list(m)}")
    return HomogeneousElement(f, m, False, dd)


class GradedElement:
    """Finite sum of homogeneous elements, stored as degree -> section."""

    def __init__(self, terms: Mapping[Degree, RationalSection] | None = None):
        self.terms: dict[Degree, RationalSection] = {}
        for m, f in (terms or {}).items():
            self._add(tuple(m), RationalSection(f))

    def _add(self, m: Degree, f: RationalSection):
        s = self.terms.get(m, RationalSection(0)) + f
        if s.is_zero():
            self.terms.pop(m, None)
        else:
            self.terms[m] = s

    @classmethod
    def of(cls, *elts: HomogeneousElement) -> "GradedElement":
        g = cls()
        for e in elts:
            if not e.zero:
                g._add(e.degree, e.section)
        return g

    def homogeneous_parts(self, owner: PolyhedralDivisor | None = None) -> list[HomogeneousElement]:
        return [HomogeneousElement(f, m, False, owner) for m, f in self.sorted_terms()]

    def sorted_terms(self) -> list[tuple[Degree, RationalSection]]:
        return sorted(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GradedElement") -> "GradedElement":
        g = GradedElement(self.terms)
        for m, f in other.terms.items():
            g._add(m, f)
        return g

    def __mul__(self, other: "GradedElement") -> "GradedElement":
        g = GradedElement()
        for m1, f1 in self.terms.items():
            for m2, f2 in other.terms.items():
                g._add(vec_add(m1, m2), f1 * f2)
        return g

    def scale(self, c) -> "GradedElement":
        return GradedElement({m: f * RationalSection(Fraction(c)) for m, f in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, GradedElement) and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({f})*chi^{list(m)}" for m, f in self.sorted_terms())

    __repr__ = __str__


# ---------------------------------------------------------------------------
# graded pieces and generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedPiece:
    degree: Degree
    dimension: SectionDimension
    basis: tuple[RationalSection, ...] | None


def graded_piece(dd: PolyhedralDivisor, m: Sequence) -> GradedPiece:
    m = dd.check_degree(m)
    return piece_of(dd.base, evaluate(dd, m), m)


def piece_of(base: Base, d: QDivisor, m: Degree) -> GradedPiece:
    """Graded-piece report for the section space of ``d``."""
    dim = h0(base, d)
    basis = tuple(section_basis(base, d)) if base.has_sections else None
    return GradedPiece(tuple(m), dim, basis)


@dataclass(frozen=True)
class GeneratorSet:
    """Candidate algebra generators found up to a degree bound.

    ``grade_bound`` is the largest value of the grading functional that was
    examined exhaustively; ``certified`` is true only when the list is known
    to generate the whole algebra.
    """

    elements: tuple[HomogeneousElement, ...]
    bound: int
    grade_bound: int
    certified: bool


def _grading(dd: PolyhedralDivisor) -> tuple[int, ...]:
    if not dd.tail.is_full_dimensional:
        raise Unsupported("generator search needs a pointed weight cone "
                          "(full-dimensional tail)")
    g = (0,) * dd.rank
    for r in dd.tail.rays:
        g = vec_add(g, r)
    return g


def _degrees_up_to(dd: PolyhedralDivisor, grading, top: int) -> list[Degree]:
    wc = dd.weight_cone
    if wc.is_zero:
        return [(0,) * dd.rank]
    radius = max(math.floor(Fraction(max_norm(r) * top, pairing(grading, r))) for r in wc.rays)
    box = _box_points(dd.rank, radius)
    pts = [m for m in box if pairing(grading, m) <= top and wc.contains(m)]
    return sorted(pts, key=lambda m: (pairing(grading, m), m))


def _box_points(n: int, r: int):
    import itertools
    return itertools.product(range(-r, r + 1), repeat=n)


def _basis_divisor_factor(d: QDivisor) -> RationalSection:
    """``B = prod (t - a)^(-c_a)`` over the finite part of ``floor(d)``."""
    return RationalSection.monomial(
        1, {p: -c for p, c in round_down(d).terms if p != INF})


def generator_candidates(dd: PolyhedralDivisor, bound: int) -> GeneratorSet:
    """Homogeneous elements not generated by products of lower ones.

    Degrees are processed by increasing value of a grading functional that is
    positive on the weight cone minus the origin. Every degree with max-norm at
    most ``bound`` and every Hilbert basis degree is covered, together with
    all degrees of smaller or equal grade so that products are exact.
    """
    if bound < 1:
        raise FibertypeError("bound must be at least 1")
    kind = dd.base.kind
    if kind is BaseKind.ABSTRACT_CURVE:
        raise Unsupported("abstract curves carry no section arithmetic")
    grading = _grading(dd)
    wc = dd.weight_cone
    wanted = [m for m in _box_points(dd.rank, bound) if wc.contains(m)]
    wanted += hilbert_basis(wc)
    top = max(pairing(grading, m) for m in wanted)
    degrees = _degrees_up_to(dd, grading, top)

    gens: list[HomogeneousElement] = []
    if kind is BaseKind.AFFINE_LINE:
        gens.append(HomogeneousElement(RationalSection.t(), (0,) * dd.rank, False, dd))
        _affine_generators(dd, degrees, gens)
    else:
        _vector_space_generators(dd, degrees, gens)
    return GeneratorSet(tuple(gens), bound, top, kind is BaseKind.POINT)


def _vector_space_generators(dd, degrees, gens):
    """Point and projective-line bases: finite-dimensional pieces."""
    spans: dict[Degree, list[list[Fraction]]] = {}
    factors: dict[Degree, tuple[RationalSection, int]] = {}

    def coords(f: RationalSection, m: Degree) -> list[Fraction]:
        b, size = factors[m]
        c = (f / b).polynomial_coeffs()
        return c + [Fraction(0)] * (size - len(c))

    for m in degrees:
        d = evaluate(dd, m)
        size = h0(dd.base, d).value
        b = _basis_divisor_factor(d) if dd.base.kind is BaseKind.PROJ_LINE else RationalSection(1)
        factors[m] = (b, size)
        if size == 0:
            spans[m] = []
            continue
        if not any(m):
            spans[m] = [coords(RationalSection(1), m)]
            continue
        rows = []
        for g in gens:
            rest = tuple(a - c for a, c in zip(m, g.degree))
            for row in spans.get(rest, []):
                prod = g.section * _from_coords(row, factors[rest][0])
                rows.append(coords(prod, m))
        span, _ = rref(rows)
        for f in section_basis(dd.base, d):
            trial, _ = rref(span + [coords(f, m)])
            if len(trial) > len(span):
                span = trial
                gens.append(HomogeneousElement(f, m, False, dd))
        spans[m] = span


def _from_coords(row: Sequence[Fraction], b: RationalSection) -> RationalSection:
    poly = RationalSection(0)
    t = RationalSection.t()
    for j, c in enumerate(row):
        if c:
            poly = poly + RationalSection(c) * t ** j
    return poly * b


def _affine_generators(dd, degrees, gens):
    """Affine line: every piece is free of rank one over k[t]."""
    import sympy
    t = sympy.Symbol("t")
    for m in degrees:
        if not any(m):
            continue
        b = _basis_divisor_factor(evaluate(dd, m))
        g = sympy.Integer(0)
        for h in gens:
            if not any(h.degree):
                continue
            rest = tuple(a - c for a, c in zip(m, h.degree))
            if not dd.weight_cone.contains(rest):
                continue
            rb = _basis_divisor_factor(evaluate(dd, rest))
            q = (h.section * rb / b).value.as_expr()
            g = sympy.gcd(g, q)
            if g.is_number and g != 0:
                break
        if not (g.is_number and g != 0):
            gens.append(HomogeneousElement(b, m, False, dd))
