"""Homogeneous locally nilpotent derivations of fiber type.

For a ray ``rho`` of the tail cone, a degree ``e`` in ``S_rho`` and a nonzero
``phi`` in ``Phi_e = H^0(Y, O(-D_e))`` the derivation acts on homogeneous
elements by

    d(f·χ^m) = <m, rho> · phi · f · χ^(m+e).

Its kernel is the subring supported on the face ``tau = σ^∨ ∩ rho^⊥`` and two
such derivations have the same kernel exactly when they share the ray.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .base import BaseKind, QDivisor, RationalSection, section_in
from .divisor import (
    GeneratorSet,
    GradedElement,
    GradedPiece,
    HomogeneousElement,
    PolyhedralDivisor,
    big_on_relint,
    element,
    generator_candidates,
    piece_of,
)
from .errors import (
    ContextMismatch,
    FaceNotCovered,
    FibertypeError,
    NotInSRho,
    PhiNotInPhiE,
    Unsupported,
    ZeroPhi,
)
from .lattice import Cone, face_dual_to_ray, pairing, rays, vec_add
from .polyhedra import piece_containing_face

DEFAULT_BOUND = 6


@dataclass(frozen=True)
class RayContext:
    sigma: Cone
    rho: tuple[int, ...]
    mu: tuple[int, ...]
    tau: Cone
    sigma1_dual: Cone


def choose_mu(rho: Sequence[int]) -> tuple[int, ...]:
    """Smallest vector with ``<mu, rho> = 1``, ordered by L1 norm then lexicographically."""
    n = len(rho)
    if math.gcd(*rho) != 1:
        raise FibertypeError(f"{tuple(rho)} is not primitive")
    radius = 1
    while True:
        for v in itertools.product(range(-radius, radius + 1), repeat=n):
            if sum(map(abs, v)) == radius and pairing(v, rho) == 1:
                return v
        radius += 1


def ray_context(sigma: Cone, rho: Sequence[int]) -> RayContext:
    rho = tuple(rho)
    tau = face_dual_to_ray(sigma, rho)
    others = [r for r in rays(sigma) if r != rho]
    sigma1 = Cone.from_generators(others, sigma.rank, "N")
    return RayContext(sigma, rho, choose_mu(rho), tau, sigma1.dual())


def s_rho_contains(ctx: RayContext, e: Sequence[int]) -> bool:
    e = tuple(e)
    return pairing(e, ctx.rho) == -1 and ctx.sigma1_dual.contains(e)


def s_rho_enumerate(ctx: RayContext, bound: int) -> list[tuple[int, ...]]:
    """Elements of ``S_rho`` of max-norm at most ``bound`` in lexicographic order."""
    if bound < 0:
        raise FibertypeError("bound must be nonnegative")
    box = itertools.product(range(-bound, bound + 1), repeat=ctx.sigma.rank)
    return [e for e in box if s_rho_contains(ctx, e)]


def _check_s_rho(ctx: RayContext, e) -> tuple[int, ...]:
    e = tuple(e)
    if len(e) != ctx.sigma.rank or not s_rho_contains(ctx, e):
        raise NotInSRho(f"{e} is not in S_rho for the ray {ctx.rho}")
    return e


def d_e(dd: PolyhedralDivisor, ctx: RayContext, e: Sequence[int], slow: bool = False) -> QDivisor:
    """``D_e = -sum g_{1,H}(e)·H`` where ``g_1`` is linear on the piece containing ``tau``.

    ``slow=True`` uses ``-min_r g_{r,H}(e)`` over all pieces. The fast formula
    needs ``h_H`` linear on ``tau``; when it is not (possible from rank 3 on)
    the coefficient falls back to the slow formula.
    """
    _check_context(dd, ctx)
    e = _check_s_rho(ctx, e)
    coeffs = {}
    for p, delta in dd.coeffs:
        if slow:
            coeffs[p] = -min(piece.functional(e) for piece in delta.pieces)
            continue
        try:
            coeffs[p] = -piece_containing_face(delta, ctx.tau).functional(e)
        except FaceNotCovered:
            coeffs[p] = -min(piece.functional(e) for piece in delta.pieces)
    return QDivisor.from_dict(dd.base, coeffs)


def phi_e(dd: PolyhedralDivisor, ctx: RayContext, e: Sequence[int]) -> GradedPiece:
    """The section space ``Phi_e = H^0(Y, O(-D_e))``."""
    e = tuple(e)
    return piece_of(dd.base, -d_e(dd, ctx, e), e)


def exists_fiber_lnd(dd: PolyhedralDivisor, ctx: RayContext) -> bool | None:
    """Whether ``D(m)`` is big for every ``m`` in the relative interior of ``tau``."""
    _check_context(dd, ctx)
    return big_on_relint(dd, ctx.tau)[0]


def _check_context(dd: PolyhedralDivisor, ctx: RayContext):
    if ctx.sigma != dd.tail:
        raise ContextMismatch("the ray context belongs to a different tail cone")


# ---------------------------------------------------------------------------
# derivations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiberLND:
    dd: PolyhedralDivisor = field(repr=False)
    context: RayContext
    e: tuple[int, ...]
    phi: RationalSection

    @property
    def ray(self) -> tuple[int, ...]:
        return self.context.rho

    def __str__(self):
        return f"d[rho={list(self.ray)}, e={list(self.e)}, phi={self.phi}]"


def make_lnd(dd: PolyhedralDivisor, ctx: RayContext, e: Sequence[int], phi) -> FiberLND:
    if dd.base.kind is BaseKind.ABSTRACT_CURVE:
        raise Unsupported("derivations need section arithmetic, unavailable on abstract curves")
    e = _check_s_rho(ctx, e)
    phi = RationalSection(phi)
    if phi.is_zero():
        raise ZeroPhi("phi must be nonzero")
    if not section_in(phi, -d_e(dd, ctx, e)):
        raise PhiNotInPhiE(f"{phi} is not a section of -D_e = {-d_e(dd, ctx, e)}")
    return FiberLND(dd, ctx, e, phi)


def apply(d: FiberLND, elt: HomogeneousElement) -> HomogeneousElement:
    if elt.owner is not None and elt.owner is not d.dd and elt.owner != d.dd:
        raise ContextMismatch("the element belongs to a different ring")
    if elt.zero:
        return HomogeneousElement.zero_element(d.dd)
    if len(elt.degree) != d.dd.rank:
        raise ContextMismatch("the element has a degree of the wrong rank")
    m0 = pairing(elt.degree, d.ray)
    if m0 == 0:
        return HomogeneousElement.zero_element(d.dd)
    m = vec_add(elt.degree, d.e)
    f = RationalSection(m0) * d.phi * elt.section
    return element(d.dd, f, m)


def apply_sum(d: FiberLND, x: GradedElement) -> GradedElement:
    return GradedElement.of(*(apply(d, h) for h in x.homogeneous_parts(d.dd)))


def nilpotency_order(d: FiberLND, elt: HomogeneousElement) -> int:
    """Smallest ``n`` with ``d^n(elt) = 0``."""
    if elt.zero:
        return 0
    n = 0
    while not elt.zero:
        elt = apply(d, elt)
        n += 1
    return n


def exp_action(d: FiberLND, t, elt: HomogeneousElement | GradedElement) -> GradedElement:
    """``sum_k t^k/k! · d^k(elt)``; finite because ``d`` is locally nilpotent."""
    t = Fraction(t)
    x = elt if isinstance(elt, GradedElement) else GradedElement.of(elt)
    total = GradedElement()
    k = 0
    term = x
    while not term.is_zero():
        total = total + term.scale(t ** k / math.factorial(k))
        term = apply_sum(d, term)
        k += 1
    return total


@dataclass(frozen=True)
class KernelDescription:
    weight_monoid: Cone
    generators: GeneratorSet | None
    note: str = ""


def kernel_description(d: FiberLND, bound: int = DEFAULT_BOUND) -> KernelDescription:
    tau = d.context.tau
    try:
        gs = generator_candidates(d.dd, bound)
    except Unsupported as exc:
        return KernelDescription(tau, None, str(exc))
    kept = tuple(g for g in gs.elements if tau.contains(g.degree))
    return KernelDescription(tau, GeneratorSet(kept, gs.bound, gs.grade_bound, gs.certified))


def equivalent(d1: FiberLND, d2: FiberLND) -> bool:
    if d1.dd is not d2.dd and d1.dd != d2.dd:
        raise ContextMismatch("derivations on different rings")
    return d1.ray == d2.ray


@dataclass(frozen=True)
class EquivalenceClass:
    ray: tuple[int, ...]
    exists: bool | None
    witness_e: tuple[int, ...] | None
    witness_phi: RationalSection | None
    bound: int


def find_witness(dd: PolyhedralDivisor, ctx: RayContext, bound: int):
    """First ``e`` in ``S_rho`` (lexicographic, max-norm <= bound) with ``Phi_e != 0``."""
    for e in s_rho_enumerate(ctx, bound):
        piece = phi_e(dd, ctx, e)
        if piece.dimension.positive:
            phi = piece.basis[0] if piece.basis else None
            return e, phi
    return None, None


def list_equivalence_classes(dd: PolyhedralDivisor, bound: int = DEFAULT_BOUND
                             ) -> list[EquivalenceClass]:
    out = []
    for rho in rays(dd.tail):
        ctx = ray_context(dd.tail, rho)
        exists = exists_fiber_lnd(dd, ctx)
        e, phi = (None, None) if exists is False else find_witness(dd, ctx, bound)
        out.append(EquivalenceClass(rho, exists, e, phi, bound))
    return out
