"""JSON input parsing and canonical report serialization.

Numbers are written as JSON integers when integral and as ``"p/q"`` strings
otherwise. Field order is fixed by the code, so equal inputs give
byte-identical output.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from .base import Base, QDivisor, RationalSection, SectionDimension, parse_point
from .divisor import (
    GeneratorSet,
    GradedElement,
    GradedPiece,
    HomogeneousElement,
    PolyhedralDivisor,
    ProperReport,
)
from .errors import FibertypeError, SchemaError
from .invariants import FMLReport, MLReport
from .lattice import Cone
from .lnd import EquivalenceClass, FiberLND, KernelDescription, make_lnd, ray_context
from .polyhedra import TailedPolyhedron

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# numbers and vectors
# ---------------------------------------------------------------------------

def fmt_num(x) -> int | str:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v: Sequence) -> list:
    return [fmt_num(x) for x in v]


def parse_num(v: Any, loc: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise SchemaError(loc, f"expected an integer or a 'p/q' string, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(loc, f"not a rational number: {v!r}") from None


def parse_int(v: Any, loc: str) -> int:
    x = parse_num(v, loc)
    if x.denominator != 1:
        raise SchemaError(loc, f"expected an integer, got {v!r}")
    return int(x)


def parse_vec(v: Any, loc: str, length: int | None = None, integral: bool = False) -> tuple:
    if not isinstance(v, list):
        raise SchemaError(loc, f"expected a list, got {type(v).__name__}")
    if length is not None and len(v) != length:
        raise SchemaError(loc, f"expected {length} entries, got {len(v)}")
    conv = parse_int if integral else parse_num
    return tuple(conv(x, f"{loc}[{i}]") for i, x in enumerate(v))


def _field(obj: dict, key: str, loc: str):
    if not isinstance(obj, dict):
        raise SchemaError(loc, "expected an object")
    if key not in obj:
        raise SchemaError(f"{loc}.{key}", "missing field")
    return obj[key]


# ---------------------------------------------------------------------------
# divisors
# ---------------------------------------------------------------------------

def parse_base(obj: Any, loc: str = "$.base") -> Base:
    kind = _field(obj, "kind", loc)
    genus = obj.get("genus", 0)
    try:
        return Base(kind, parse_int(genus, f"{loc}.genus"))
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(loc, str(exc)) from None


def parse_divisor(obj: Any, loc: str = "$") -> PolyhedralDivisor:
    if not isinstance(obj, dict):
        raise SchemaError(loc, "expected an object")
    if "schema" in obj and obj["schema"] != SCHEMA_VERSION:
        raise SchemaError(f"{loc}.schema", f"unsupported schema version {obj['schema']!r}")
    n = parse_int(_field(obj, "rank", loc), f"{loc}.rank")
    if n < 1:
        raise SchemaError(f"{loc}.rank", "rank must be positive")
    tail_obj = _field(obj, "tail", loc)
    ray_list = _field(tail_obj, "rays", f"{loc}.tail")
    if not isinstance(ray_list, list):
        raise SchemaError(f"{loc}.tail.rays", "expected a list")
    gens = [parse_vec(r, f"{loc}.tail.rays[{i}]", n, integral=True) for i, r in enumerate(ray_list)]
    tail = Cone.from_generators(gens, n, "N")
    if not tail.is_pointed:
        raise SchemaError(f"{loc}.tail", "the tail cone must be pointed")
    base = parse_base(_field(obj, "base", loc), f"{loc}.base")
    coeffs = obj.get("coeffs", [])
    if not isinstance(coeffs, list):
        raise SchemaError(f"{loc}.coeffs", "expected a list")
    table = {}
    for i, c in enumerate(coeffs):
        cl = f"{loc}.coeffs[{i}]"
        at = _field(c, "at", cl)
        try:
            p = base.check_point(parse_point(at))
        except FibertypeError as exc:
            raise SchemaError(f"{cl}.at", str(exc)) from None
        if p in table:
            raise SchemaError(f"{cl}.at", f"duplicate point {at!r}")
        verts = _field(c, "vertices", cl)
        if not isinstance(verts, list) or not verts:
            raise SchemaError(f"{cl}.vertices", "expected a nonempty list")
        table[p] = TailedPolyhedron.make(
            [parse_vec(v, f"{cl}.vertices[{j}]", n) for j, v in enumerate(verts)], tail)
    try:
        return PolyhedralDivisor.make(base, tail, table)
    except FibertypeError as exc:
        raise SchemaError(loc, str(exc)) from None


def base_to_json(base: Base) -> dict:
    out: dict = {"kind": base.kind.value}
    if base.genus:
        out["genus"] = base.genus
    elif base.kind.value == "abstract_curve":
        out["genus"] = 0
    return out


def divisor_to_json(dd: PolyhedralDivisor) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "rank": dd.rank,
        "tail": {"rays": [list(r) for r in dd.tail.rays]},
        "base": base_to_json(dd.base),
        "coeffs": [{"at": str(p), "vertices": [fmt_vec(v) for v in d.vertices]}
                   for p, d in dd.coeffs],
    }


def cone_to_json(c: Cone) -> dict:
    return {
        "space": c.space,
        "rank": c.rank,
        "dim": c.dim,
        "rays": [list(r) for r in c.rays],
        "lineality": [list(v) for v in c.lineality],
        "facets": [list(u) for u in c.facets],
        "equations": [list(u) for u in c.equations],
    }


def parse_cone(obj: Any, loc: str = "$", space: str = "N") -> Cone:
    """A cone given as a list of generators or as ``{"rays": [...], "rank": n}``."""
    rank = None
    if isinstance(obj, dict):
        if "rank" in obj:
            rank = parse_int(obj["rank"], f"{loc}.rank")
        gens = _field(obj, "rays", loc)
        loc = f"{loc}.rays"
    else:
        gens = obj
    if not isinstance(gens, list):
        raise SchemaError(loc, "expected a list of generators")
    if rank is None:
        if not gens or not isinstance(gens[0], list):
            raise SchemaError(loc, "cannot infer the rank; give a nonempty list of vectors")
        rank = len(gens[0])
    vecs = [parse_vec(g, f"{loc}[{i}]", rank, integral=True) for i, g in enumerate(gens)]
    return Cone.from_generators(vecs, rank, space)


def qdivisor_to_json(d: QDivisor) -> dict:
    return {str(p): fmt_num(c) for p, c in d.terms}


def section_to_json(f: RationalSection | None):
    return None if f is None else str(f)


def dimension_to_json(s: SectionDimension) -> dict:
    out: dict = {"kind": s.kind}
    if s.kind == "finite":
        out["value"] = s.value
    elif s.kind == "infinite":
        out["generator"] = str(s.generator)
    return out


def piece_to_json(p: GradedPiece) -> dict:
    return {
        "degree": list(p.degree),
        "dimension": dimension_to_json(p.dimension),
        "basis": None if p.basis is None else [str(f) for f in p.basis],
    }


def element_to_json(x: HomogeneousElement) -> dict:
    if x.zero:
        return {"zero": True}
    return {"section": str(x.section), "degree": list(x.degree)}


def graded_element_to_json(x: GradedElement) -> list:
    return [{"section": str(f), "degree": list(m)} for m, f in x.sorted_terms()]


def generators_to_json(g: GeneratorSet | None):
    if g is None:
        return None
    return {
        "bound": g.bound,
        "grade_bound": g.grade_bound,
        "certified": g.certified,
        "elements": [element_to_json(x) for x in g.elements],
    }


# ---------------------------------------------------------------------------
# derivations
# ---------------------------------------------------------------------------

def derivation_to_json(d: FiberLND) -> dict:
    return {"ray": list(d.ray), "e": list(d.e), "phi": str(d.phi)}


def parse_derivation(obj: Any, dd: PolyhedralDivisor, loc: str = "$") -> FiberLND:
    ray = parse_vec(_field(obj, "ray", loc), f"{loc}.ray", dd.rank, integral=True)
    e = parse_vec(_field(obj, "e", loc), f"{loc}.e", dd.rank, integral=True)
    phi = _field(obj, "phi", loc)
    if not isinstance(phi, (str, int)) or isinstance(phi, bool):
        raise SchemaError(f"{loc}.phi", "expected a rational function as a string")
    try:
        return make_lnd(dd, ray_context(dd.tail, ray), e, str(phi))
    except FibertypeError as exc:
        raise SchemaError(loc, f"{type(exc).__name__}: {exc}") from None


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def tri(v: bool | None):
    return "unknown" if v is None else v


def proper_to_json(r: ProperReport) -> dict:
    return {
        "proper": tri(r.proper),
        "semiample": tri(r.semiample),
        "big": tri(r.big),
        "q_cartier": r.q_cartier,
        "witnesses": [{"test": k, "m": fmt_vec(m)} for k, m in r.witnesses],
    }


def classes_to_json(classes: list[EquivalenceClass]) -> dict:
    return {
        "count": len(classes),
        "classes": [{
            "ray": list(c.ray),
            "exists": tri(c.exists),
            "witness": None if c.witness_e is None else
            {"e": list(c.witness_e), "phi": section_to_json(c.witness_phi)},
            "bound": c.bound,
        } for c in classes],
    }


def kernel_to_json(k: KernelDescription) -> dict:
    out = {"weight_monoid": cone_to_json(k.weight_monoid),
           "generators": generators_to_json(k.generators)}
    if k.note:
        out["note"] = k.note
    return out


def ml_to_json(r: MLReport) -> dict:
    out = {
        "qualifying_rays": [list(x) for x in r.qualifying_rays],
        "undecided_rays": [list(x) for x in r.undecided_rays],
        "weight_monoid": cone_to_json(r.weight_monoid),
        "monoid_generators": [list(x) for x in r.monoid_generators],
        "degree_zero_part": r.degree_zero_part,
        "trivial": tri(r.trivial),
        "generators": generators_to_json(r.generators),
        "ML_h": r.ml_h,
        "ML": r.ml,
        "inclusion_chain": r.inclusion_chain,
    }
    if r.generators_note:
        out["generators_note"] = r.generators_note
    return out


def fml_to_json(r: FMLReport) -> dict:
    return {
        "contains_KY": r.contains_KY,
        "KY": r.KY,
        "reason": r.reason,
        "lower_bound_monoid": cone_to_json(r.lower_bound_monoid),
        "monoid_generators": [list(x) for x in r.monoid_generators],
        "is_lower_bound": r.is_lower_bound,
    }


def envelope(command: str, result: dict) -> dict:
    return {"schema": SCHEMA_VERSION, "command": command, "result": result}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def load_json(text: str, loc: str = "$"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{loc}:{exc.lineno}:{exc.colno}", exc.msg) from None
