"""Base varieties Y, Q-divisors on them and spaces of sections.

Supported bases are a point, the affine line, the projective line (both with
coordinate ``t``) and an abstract smooth projective curve of given genus.
The abstract curve only supports degree bookkeeping and Riemann-Roch; it
has no function field arithmetic.

Prime divisors are identified by:

* a ``Fraction`` -- the rational point ``t = a`` (affine and projective line)
* the string ``"inf"`` -- the point at infinity (projective line)
* a string ``"label:<name>"`` -- an opaque point of an abstract curve
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Union

import sympy
from sympy import QQ
from sympy.polys.fields import field

from .errors import (
    FibertypeError,
    IrreducibleFactorOutsideGroundField,
    NotProjective,
    Unsupported,
)

INF = "inf"
PrimeDivisor = Union[Fraction, str]

_FIELD, _T = field("t", QQ)


class BaseKind(str, enum.Enum):
    POINT = "point"
    AFFINE_LINE = "affine_line"
    PROJ_LINE = "proj_line"
    ABSTRACT_CURVE = "abstract_curve"


@dataclass(frozen=True)
class Base:
    kind: BaseKind
    genus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", BaseKind(self.kind))
        if self.genus < 0:
            raise FibertypeError("genus must be nonnegative")
        if self.kind is not BaseKind.ABSTRACT_CURVE and self.genus != 0:
            raise FibertypeError(f"genus only applies to abstract curves, not {self.kind.value}")

    @classmethod
    def point(cls) -> "Base":
        return cls(BaseKind.POINT)

    @classmethod
    def affine_line(cls) -> "Base":
        return cls(BaseKind.AFFINE_LINE)

    @classmethod
    def proj_line(cls) -> "Base":
        return cls(BaseKind.PROJ_LINE)

    @classmethod
    def abstract_curve(cls, genus: int) -> "Base":
        return cls(BaseKind.ABSTRACT_CURVE, genus)

    @property
    def dim(self) -> int:
        return 0 if self.kind is BaseKind.POINT else 1

    @property
    def is_projective(self) -> bool:
        return self.kind in (BaseKind.PROJ_LINE, BaseKind.ABSTRACT_CURVE)

    @property
    def is_affine(self) -> bool:
        return self.kind in (BaseKind.POINT, BaseKind.AFFINE_LINE)

    @property
    def has_sections(self) -> bool:
        """Whether explicit section arithmetic is available."""
        return self.kind is not BaseKind.ABSTRACT_CURVE

    def check_point(self, p: PrimeDivisor) -> PrimeDivisor:
        if self.kind is BaseKind.POINT:
            raise FibertypeError("a point has no prime divisors")
        if isinstance(p, Fraction):
            if self.kind is BaseKind.ABSTRACT_CURVE:
                raise FibertypeError("points of an abstract curve must be labels")
            return p
        if p == INF:
            if self.kind is not BaseKind.PROJ_LINE:
                raise FibertypeError("'inf' is only a point of the projective line")
            return p
        if isinstance(p, str) and p.startswith("label:") and len(p) > 6:
            if self.kind is not BaseKind.ABSTRACT_CURVE:
                raise FibertypeError("labelled points only exist on abstract curves")
            return p
        raise FibertypeError(f"not a prime divisor: {p!r}")

    def __str__(self):
        if self.kind is BaseKind.ABSTRACT_CURVE:
            return f"abstract_curve(genus={self.genus})"
        return self.kind.value


def parse_point(s) -> PrimeDivisor:
    """Parse ``"inf"``, ``"label:x"``, an int or a ``"p/q"`` string."""
    if isinstance(s, bool):
        raise FibertypeError(f"not a point: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    if isinstance(s, str):
        if s == INF or s.startswith("label:"):
            return s
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            pass
    raise FibertypeError(f"not a point: {s!r}")


def format_point(p: PrimeDivisor) -> str:
    return str(p)


def point_key(p: PrimeDivisor):
    """Canonical order: rational points by value, then infinity, then labels."""
    if isinstance(p, Fraction):
        return (0, p, "")
    if p == INF:
        return (1, Fraction(0), "")
    return (2, Fraction(0), p)


# ---------------------------------------------------------------------------
# Q-divisors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QDivisor:
    base: Base
    terms: tuple[tuple[PrimeDivisor, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, base: Base, coeffs: Mapping[PrimeDivisor, object]) -> "QDivisor":
        acc: dict = {}
        for p, c in coeffs.items():
            p = base.check_point(parse_point(p))
            acc[p] = acc.get(p, Fraction(0)) + Fraction(c)
        terms = tuple(sorted(((p, c) for p, c in acc.items() if c != 0),
                             key=lambda pc: point_key(pc[0])))
        return cls(base, terms)

    @classmethod
    def zero(cls, base: Base) -> "QDivisor":
        return cls(base, ())

    @property
    def coeffs(self) -> dict:
        return dict(self.terms)

    def __getitem__(self, p) -> Fraction:
        return self.coeffs.get(parse_point(p), Fraction(0))

    @property
    def support(self) -> list:
        return [p for p, _ in self.terms]

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    def _combine(self, other: "QDivisor", sign: int) -> "QDivisor":
        if self.base != other.base:
            raise FibertypeError("divisors live on different bases")
        d = dict(self.terms)
        for p, c in other.terms:
            d[p] = d.get(p, Fraction(0)) + sign * c
        return QDivisor.from_dict(self.base, d)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return QDivisor(self.base, tuple((p, -c) for p, c in self.terms))

    def scale(self, c) -> "QDivisor":
        return QDivisor.from_dict(self.base, {p: Fraction(c) * x for p, x in self.terms})

    def __le__(self, other):
        return all(c >= 0 for _, c in (other - self).terms)

    def __ge__(self, other):
        return other <= self

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{p}]" for p, c in self.terms)


def degree(d: QDivisor) -> Fraction:
    if not d.base.is_projective:
        raise NotProjective(f"degree is not defined on the {d.base} base")
    return sum((c for _, c in d.terms), Fraction(0))


def round_down(d: QDivisor) -> QDivisor:
    return QDivisor.from_dict(d.base, {p: math.floor(c) for p, c in d.terms})


# ---------------------------------------------------------------------------
# rational sections
# ---------------------------------------------------------------------------

class RationalSection:
    """An element of the function field Q(t); constants serve the point base."""

    __slots__ = ("value", "__dict__")

    def __init__(self, value=0):
        if isinstance(value, RationalSection):
            value = value.value
        elif isinstance(value, str):
            value = _parse_function(value)
        elif isinstance(value, (int, Fraction)):
            value = _FIELD(QQ(Fraction(value).numerator, Fraction(value).denominator))
        self.value = value

    @classmethod
    def t(cls) -> "RationalSection":
        return cls(_T)

    @classmethod
    def monomial(cls, coeff, factors: Mapping[Fraction, int]) -> "RationalSection":
        """``coeff * prod (t - a)^k`` over the given factors."""
        v = _FIELD(QQ(Fraction(coeff).numerator, Fraction(coeff).denominator))
        for a, k in factors.items():
            k = int(k)
            lin = _T - QQ(a.numerator, a.denominator)
            v = v * lin ** k if k >= 0 else v / lin ** (-k)
        return cls(v)

    def is_zero(self) -> bool:
        return self.value == 0

    def is_constant(self) -> bool:
        return self.value.numer.is_ground and self.value.denom.is_ground

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, str)):
            other = RationalSection(other)
        return isinstance(other, RationalSection) and self.value == other.value

    def __hash__(self):
        return hash(str(self))

    def __mul__(self, other):
        other = other if isinstance(other, RationalSection) else RationalSection(other)
        return RationalSection(self.value * other.value)

    __rmul__ = __mul__

    def __add__(self, other):
        other = other if isinstance(other, RationalSection) else RationalSection(other)
        return RationalSection(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = other if isinstance(other, RationalSection) else RationalSection(other)
        return RationalSection(self.value - other.value)

    def __neg__(self):
        return RationalSection(-self.value)

    def __truediv__(self, other):
        other = other if isinstance(other, RationalSection) else RationalSection(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero section")
        return RationalSection(self.value / other.value)

    def __pow__(self, k: int):
        if k < 0:
            return RationalSection(1) / RationalSection(self.value ** (-k))
        return RationalSection(self.value ** k)

    def __str__(self):
        return str(self.value.as_expr()).replace("**", "^")

    def __repr__(self):
        return f"RationalSection({str(self)!r})"

    @property
    def numerator(self):
        return self.value.numer

    @property
    def denominator(self):
        return self.value.denom

    def polynomial_coeffs(self) -> list[Fraction]:
        """Coefficients ``[c0, c1, ...]`` of a polynomial section."""
        if not self.value.denom.is_ground:
            raise FibertypeError(f"{self} is not a polynomial")
        den = _to_fraction(self.value.denom.LC)
        num = self.value.numer
        deg = num.degree()
        if deg < 0:
            return []
        out = [Fraction(0)] * (deg + 1)
        for (k,), c in num.terms():
            out[k] = _to_fraction(c) / den
        return out

    @cached_property
    def _finite_orders(self) -> dict[Fraction, int]:
        orders: dict[Fraction, int] = {}
        for poly, sign in ((self.value.numer, 1), (self.value.denom, -1)):
            if poly.is_ground:
                continue
            _, factors = poly.factor_list()
            for fac, mult in factors:
                if fac.degree() != 1:
                    raise IrreducibleFactorOutsideGroundField(
                        f"factor {fac.as_expr()} of {self} does not split over Q")
                a, b = (_to_fraction(fac.coeff(_T.numer)), _to_fraction(fac.coeff(1)))
                root = -b / a
                orders[root] = orders.get(root, 0) + sign * mult
        return {p: k for p, k in orders.items() if k != 0}

    def order_at(self, p: PrimeDivisor) -> int:
        """Order of vanishing at a rational point or at infinity."""
        if self.is_zero():
            raise FibertypeError("the zero section has no order")
        if p == INF:
            return self.value.denom.degree() - self.value.numer.degree()
        return self._finite_orders.get(p, 0)


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _parse_function(s: str):
    try:
        expr = sympy.sympify(s.replace("^", "**"), locals={"t": sympy.Symbol("t")})
        bad = expr.free_symbols - {sympy.Symbol("t")}
        if bad:
            raise FibertypeError(f"unknown symbols {sorted(map(str, bad))} in {s!r}")
        return _FIELD.from_expr(expr)
    except (sympy.SympifyError, TypeError, ValueError, sympy.polys.polyerrors.PolynomialError,
            sympy.polys.polyerrors.CoercionFailed) as exc:
        if isinstance(exc, FibertypeError):
            raise
        raise FibertypeError(f"cannot parse rational function {s!r}: {exc}") from None


def principal_divisor(f: RationalSection, base: Base) -> QDivisor:
    """``div(f)`` on the affine or projective line."""
    if base.kind not in (BaseKind.AFFINE_LINE, BaseKind.PROJ_LINE):
        raise Unsupported(f"principal divisors are not computed on the {base} base")
    coeffs = dict(f._finite_orders)
    if base.kind is BaseKind.PROJ_LINE:
        coeffs[INF] = f.order_at(INF)
    return QDivisor.from_dict(base, coeffs)


# ---------------------------------------------------------------------------
# section spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectionDimension:
    """Size of H^0(Y, O(D)).

    ``kind`` is ``"finite"`` (with ``value``), ``"infinite"`` (free of rank
    one over k[t], with ``generator``) or ``"unknown"``.
    """

    kind: str
    value: int | None = None
    generator: RationalSection | None = None

    @property
    def positive(self) -> bool | None:
        if self.kind == "finite":
            return self.value > 0
        if self.kind == "infinite":
            return True
        return None

    def __str__(self):
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "infinite":
            return f"k[t]*({self.generator})"
        return "unknown"


def _affine_generator(d: QDivisor) -> RationalSection:
    return RationalSection.monomial(1, {p: -c for p, c in round_down(d).terms})


def h0(base: Base, d: QDivisor) -> SectionDimension:
    if base.kind is BaseKind.POINT:
        return SectionDimension("finite", 1)
    if base.kind is BaseKind.AFFINE_LINE:
        return SectionDimension("infinite", generator=_affine_generator(d))
    deg = degree(round_down(d))
    if base.kind is BaseKind.PROJ_LINE:
        return SectionDimension("finite", max(int(deg) + 1, 0))
    g = base.genus
    if deg < 0:
        return SectionDimension("finite", 0)
    if deg > 2 * g - 2:
        return SectionDimension("finite", int(deg) + 1 - g)
    if deg == 0 and round_down(d).is_zero():
        return SectionDimension("finite", 1)
    return SectionDimension("unknown")


def section_basis(base: Base, d: QDivisor) -> list[RationalSection]:
    """Explicit basis (point, projective line) or module generator (affine line)."""
    if base.kind is BaseKind.POINT:
        return [RationalSection(1)]
    if base.kind is BaseKind.AFFINE_LINE:
        return [_affine_generator(d)]
    if base.kind is BaseKind.ABSTRACT_CURVE:
        raise Unsupported("abstract curves carry no section arithmetic")
    fl = round_down(d)
    deg = int(degree(fl))
    finite = {p: -c for p, c in fl.terms if p != INF}
    return [RationalSection.monomial(1, {**finite, Fraction(0): finite.get(Fraction(0), 0) + j})
            for j in range(deg + 1)]


def section_in(f: RationalSection, d: QDivisor) -> bool:
    """Whether ``div(f) + floor(D) >= 0``. The zero section is always in."""
    base = d.base
    if f.is_zero():
        return True
    if base.kind is BaseKind.POINT:
        return f.is_constant()
    if base.kind is BaseKind.ABSTRACT_CURVE:
        raise Unsupported("abstract curves carry no section arithmetic")
    fl = round_down(d).coeffs
    orders = dict(f._finite_orders)
    points = set(orders) | {p for p in fl if p != INF}
    if any(orders.get(p, 0) + fl.get(p, 0) < 0 for p in points):
        return False
    if base.kind is BaseKind.PROJ_LINE:
        return f.order_at(INF) + fl.get(INF, 0) >= 0
    return True


def is_big(base: Base, d: QDivisor) -> bool:
    if base.is_affine:
        return True
    return degree(d) > 0


def is_semiample(base: Base, d: QDivisor) -> bool | None:
    """Tri-state: ``None`` when undecidable without class group data."""
    if base.is_affine:
        return True
    deg = degree(d)
    if base.kind is BaseKind.PROJ_LINE or base.genus == 0:
        return deg >= 0
    if deg > 0 or d.is_zero():
        return True
    if deg < 0:
        return False
    return None


def function_field_name(base: Base) -> str:
    return {
        BaseKind.POINT: "k",
        BaseKind.AFFINE_LINE: "k(t)",
        BaseKind.PROJ_LINE: "k(t)",
        BaseKind.ABSTRACT_CURVE: f"K_Y (function field of a genus {base.genus} curve)",
    }[base.kind]


def iter_points(terms: Iterable) -> list:
    return sorted(terms, key=point_key)
