"""Fiber-type Makar-Limanov invariants and the trivial-invariant construction."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .base import Base, BaseKind, QDivisor, function_field_name, is_big, parse_point
from .divisor import GeneratorSet, PolyhedralDivisor, generator_candidates, is_proper
from .errors import (
    FibertypeError,
    NotBigDivisor,
    NotInteriorPoint,
    NotProjective,
    NotStandardForm,
    Unsupported,
    VerificationFailed,
)
from .lattice import Cone, hilbert_basis, rays, vec_sub
from .lnd import (
    FiberLND,
    exists_fiber_lnd,
    make_lnd,
    ray_context,
)
from .polyhedra import TailedPolyhedron

INCLUSION_CHAIN = "ML ⊆ ML_h ⊆ ML_fib"
NOT_COMPUTABLE = "not computable: requires LNDs of horizontal type"
KY_REASON = ("every fiber-type derivation vanishes on the function field of the base, "
             "so K_Y lies in the fraction field of each kernel")


@dataclass(frozen=True)
class MLReport:
    qualifying_rays: tuple[tuple[int, ...], ...]
    undecided_rays: tuple[tuple[int, ...], ...]
    weight_monoid: Cone
    monoid_generators: tuple[tuple[int, ...], ...]
    degree_zero_part: str
    trivial: bool | None
    generators: GeneratorSet | None = None
    generators_note: str = ""
    ml_h: str = NOT_COMPUTABLE
    ml: str = NOT_COMPUTABLE
    inclusion_chain: str = INCLUSION_CHAIN


@dataclass(frozen=True)
class FMLReport:
    contains_KY: bool
    KY: str
    reason: str
    lower_bound_monoid: Cone
    monoid_generators: tuple[tuple[int, ...], ...]
    is_lower_bound: bool = True


def degree_zero_part(base: Base) -> str:
    """``A_0 = H^0(Y, O_Y)``."""
    return "k[t]" if base.kind is BaseKind.AFFINE_LINE else "k"


def monoid_generators(c: Cone) -> tuple[tuple[int, ...], ...]:
    """Hilbert basis when pointed, otherwise the cone generators (lineality included)."""
    if c.is_pointed:
        return tuple(hilbert_basis(c))
    return tuple(c.generators)


def _weight_monoid(dd: PolyhedralDivisor, ray_list) -> Cone:
    omega = dd.weight_cone
    for rho in ray_list:
        omega = omega.intersect(ray_context(dd.tail, rho).tau)
    return omega


def ml_fib(dd: PolyhedralDivisor, bound: int | None = None) -> MLReport:
    """Weight monoid and degree-zero part of the intersection of fiber-type kernels.

    ``bound`` additionally lists candidate ring generators with degrees in the
    monoid.
    """
    qualifying, undecided = [], []
    for rho in rays(dd.tail):
        v = exists_fiber_lnd(dd, ray_context(dd.tail, rho))
        if v is True:
            qualifying.append(rho)
        elif v is None:
            undecided.append(rho)
    omega = _weight_monoid(dd, qualifying)
    a0 = degree_zero_part(dd.base)
    trivial: bool | None = omega.is_zero and a0 == "k"
    if not trivial and undecided:
        trivial = None
    gens, note = None, ""
    if bound is not None:
        try:
            gs = generator_candidates(dd, bound)
        except Unsupported as exc:
            note = str(exc)
        else:
            gens = GeneratorSet(tuple(g for g in gs.elements if omega.contains(g.degree)),
                                gs.bound, gs.grade_bound, gs.certified)
    return MLReport(tuple(qualifying), tuple(undecided), omega, monoid_generators(omega),
                    a0, trivial, gens, note)


def fml_fib_lower_bound(dd: PolyhedralDivisor) -> FMLReport:
    """Lower bound ``K_Y(χ^ω) ⊆ FML_fib``; never claimed to be equality."""
    ml = ml_fib(dd)
    return FMLReport(True, function_field_name(dd.base), KY_REASON,
                     ml.weight_monoid, ml.monoid_generators)


def build_trivial_ml_example(base: Base, H, sigma: Cone, p: Sequence[int]) -> PolyhedralDivisor:
    """The divisor ``sum_P c_P (p + σ)·P`` for ``H = sum c_P P``, so ``D(m) = <p,m>·H``.

    ``H`` may be a single prime divisor (coefficient one) or a :class:`QDivisor`.
    """
    if not base.is_projective:
        raise NotProjective("the construction needs a projective base")
    if not isinstance(H, QDivisor):
        H = QDivisor.from_dict(base, {parse_point(H): 1})
    if H.base != base:
        raise FibertypeError("H lives on a different base")
    if not sigma.is_pointed or not sigma.is_full_dimensional:
        raise NotInteriorPoint("sigma must be pointed and full-dimensional")
    p = tuple(p)
    if len(p) != sigma.rank or not all(float(x).is_integer() for x in p):
        raise NotInteriorPoint(f"{p} is not a lattice vector of rank {sigma.rank}")
    p = tuple(int(x) for x in p)
    if not sigma.in_relint(p):
        raise NotInteriorPoint(f"{p} is not in the relative interior of sigma")
    if not is_big(base, H):
        raise NotBigDivisor(f"H = {H} is not big")
    coeffs = {q: TailedPolyhedron.point(tuple(c * x for x in p), sigma) for q, c in H.terms}
    dd = PolyhedralDivisor.make(base, sigma, coeffs)
    if is_proper(dd).proper is not True:
        raise VerificationFailed("the constructed divisor is not proper")
    if ml_fib(dd).trivial is not True:
        raise VerificationFailed("the constructed divisor has nontrivial ML_fib")
    return dd


def standard_example_derivations(dd: PolyhedralDivisor) -> list[FiberLND]:
    """The derivations ``χ^{μ_j} ∂_{ν_i}`` for ``i != j`` on an orthant example.

    Each coefficient must be a single vertex with all entries equal, which
    makes every ``D_e`` vanish so that ``phi = 1`` is admissible.
    """
    n = dd.rank
    if dd.tail != Cone.orthant(n):
        raise NotStandardForm("the tail must be the standard orthant")
    for q, delta in dd.coeffs:
        if len(delta.vertices) != 1 or len(set(delta.vertices[0])) != 1:
            raise NotStandardForm(f"coefficient at {q} is not a multiple of the diagonal point")
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    out = []
    for i in range(n):
        ctx = ray_context(dd.tail, unit[i])
        for j in range(n):
            if i != j:
                out.append(make_lnd(dd, ctx, vec_sub(unit[j], unit[i]), 1))
    return out
