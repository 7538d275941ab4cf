"""Command-line interface; every command prints one JSON report on stdout.

Exit codes: 0 success, 2 invalid input, 3 the verdict is undecidable on the
given base.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .base import Base, is_big, is_semiample
from .divisor import PolyhedralDivisor, element, evaluate, graded_piece, is_proper
from .errors import FibertypeError, SchemaError
from .invariants import build_trivial_ml_example, fml_fib_lower_bound, ml_fib
from .lattice import Cone
from .lnd import (
    DEFAULT_BOUND,
    apply,
    d_e,
    exp_action,
    kernel_description,
    list_equivalence_classes,
    make_lnd,
    phi_e,
    ray_context,
    s_rho_enumerate,
)

EXIT_OK, EXIT_INVALID, EXIT_UNKNOWN = 0, 2, 3


def _vector(text: str, rank: int | None, loc: str) -> tuple:
    s = text.strip()
    if s.startswith("["):
        try:
            raw = json.loads(s)
        except json.JSONDecodeError:
            raise SchemaError(loc, f"cannot parse vector {text!r}") from None
    else:
        raw = [x.strip() for x in s.split(",") if x.strip()]
    if rank is not None and raw in (["0"], [0]) and rank != 1:
        raw = [0] * rank
    return io.parse_vec(raw, loc, rank, integral=True)


def _load_divisor(args) -> PolyhedralDivisor:
    if not args.input:
        raise SchemaError("--in", "an input divisor file is required")
    path = Path(args.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(str(path), exc.strerror or str(exc)) from None
    return io.parse_divisor(io.load_json(text, str(path)), str(path))


def _context(dd: PolyhedralDivisor, args):
    rho = _vector(args.ray, dd.rank, "--ray")
    return ray_context(dd.tail, rho)


def _lnd(dd: PolyhedralDivisor, args):
    if args.lnd:
        path = Path(args.lnd)
        try:
            obj = io.load_json(path.read_text(), str(path))
        except OSError as exc:
            raise SchemaError(str(path), exc.strerror or str(exc)) from None
        return io.parse_derivation(obj, dd, str(path))
    if not (args.ray and args.e):
        raise SchemaError("--lnd", "give --lnd FILE or --ray, -e and --phi")
    return make_lnd(dd, _context(dd, args), _vector(args.e, dd.rank, "-e"), args.phi)


def _element(dd: PolyhedralDivisor, text: str):
    parts = text.split(",")
    if len(parts) < dd.rank + 1:
        raise SchemaError("--elt", f"expected 'f,m1,...,m{dd.rank}', got {text!r}")
    f = ",".join(parts[:-dd.rank])
    m = io.parse_vec([p.strip() for p in parts[-dd.rank:]], "--elt", dd.rank, integral=True)
    return element(dd, f, m)


# ---------------------------------------------------------------------------
# commands; each returns (report, exit code)
# ---------------------------------------------------------------------------

def cmd_dual(args):
    if args.cone:
        cone = io.parse_cone(io.load_json(args.cone, "--cone"), "--cone")
    else:
        cone = _load_divisor(args).tail
    return {"cone": io.cone_to_json(cone), "dual": io.cone_to_json(cone.dual())}, EXIT_OK


def cmd_check_proper(args):
    r = is_proper(_load_divisor(args))
    return io.proper_to_json(r), EXIT_UNKNOWN if r.proper is None else EXIT_OK


def cmd_eval(args):
    dd = _load_divisor(args)
    m = _vector(args.m, dd.rank, "-m")
    d = evaluate(dd, m)
    semi = is_semiample(dd.base, d)
    out = {
        "m": list(m),
        "divisor": io.qdivisor_to_json(d),
        "degree": io.fmt_num(sum(d.coeffs.values(), Fraction(0))) if dd.base.is_projective else None,
        "big": is_big(dd.base, d),
        "semiample": io.tri(semi),
    }
    return out, EXIT_UNKNOWN if semi is None else EXIT_OK


def cmd_piece(args):
    dd = _load_divisor(args)
    p = graded_piece(dd, _vector(args.m, dd.rank, "-m"))
    return io.piece_to_json(p), EXIT_UNKNOWN if p.dimension.kind == "unknown" else EXIT_OK


def cmd_classes(args):
    classes = list_equivalence_classes(_load_divisor(args), args.bound)
    code = EXIT_UNKNOWN if any(c.exists is None for c in classes) else EXIT_OK
    return io.classes_to_json(classes), code


def cmd_srho(args):
    dd = _load_divisor(args)
    ctx = _context(dd, args)
    return {"ray": list(ctx.rho), "mu": list(ctx.mu), "bound": args.bound,
            "elements": [list(e) for e in s_rho_enumerate(ctx, args.bound)]}, EXIT_OK


def cmd_de(args):
    dd = _load_divisor(args)
    ctx = _context(dd, args)
    e = _vector(args.e, dd.rank, "-e")
    p = phi_e(dd, ctx, e)
    out = {"ray": list(ctx.rho), "e": list(e), "mode": "slow" if args.slow else "fast",
           "D_e": io.qdivisor_to_json(d_e(dd, ctx, e, slow=args.slow)),
           "phi_e": io.piece_to_json(p)}
    return out, EXIT_UNKNOWN if p.dimension.kind == "unknown" else EXIT_OK


def cmd_phie(args):
    dd = _load_divisor(args)
    p = phi_e(dd, _context(dd, args), _vector(args.e, dd.rank, "-e"))
    return io.piece_to_json(p), EXIT_UNKNOWN if p.dimension.kind == "unknown" else EXIT_OK


def cmd_mk_lnd(args):
    dd = _load_divisor(args)
    return io.derivation_to_json(_lnd(dd, args)), EXIT_OK


def cmd_apply(args):
    dd = _load_divisor(args)
    d = _lnd(dd, args)
    x = _element(dd, args.elt)
    return {"derivation": io.derivation_to_json(d), "input": io.element_to_json(x),
            "output": io.element_to_json(apply(d, x))}, EXIT_OK


def cmd_orbit(args):
    dd = _load_divisor(args)
    d = _lnd(dd, args)
    x = _element(dd, args.elt)
    t = io.parse_num(args.t, "-t")
    return {"derivation": io.derivation_to_json(d), "t": io.fmt_num(t),
            "input": io.element_to_json(x),
            "output": io.graded_element_to_json(exp_action(d, t, x))}, EXIT_OK


def cmd_kernel(args):
    dd = _load_divisor(args)
    d = _lnd(dd, args)
    return {"derivation": io.derivation_to_json(d),
            **io.kernel_to_json(kernel_description(d, args.bound))}, EXIT_OK


def cmd_ml_fib(args):
    r = ml_fib(_load_divisor(args), args.generators)
    return io.ml_to_json(r), EXIT_UNKNOWN if r.trivial is None else EXIT_OK


def cmd_fml_fib(args):
    return io.fml_to_json(fml_fib_lower_bound(_load_divisor(args))), EXIT_OK


def cmd_example_trivial_ml(args):
    try:
        base = Base(args.base, args.genus)
    except ValueError as exc:
        raise SchemaError("--base", str(exc)) from None
    if args.tail:
        sigma = io.parse_cone(io.load_json(args.tail, "--tail"), "--tail")
    else:
        sigma = Cone.orthant(args.rank)
    p = _vector(args.p, sigma.rank, "--p") if args.p else (1,) * sigma.rank
    dd = build_trivial_ml_example(base, args.at, sigma, p)
    return {"divisor": io.divisor_to_json(dd), "proper": io.proper_to_json(is_proper(dd)),
            "ml_fib": io.ml_to_json(ml_fib(dd))}, EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibertype",
        description="Fiber-type G_a-actions on affine T-varieties of complexity at most one.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, divisor=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if divisor:
            p.add_argument("--in", dest="input", metavar="PATH", required=name != "dual",
                           help="polyhedral divisor JSON file")
        p.set_defaults(func=func)
        return p

    def lnd_args(p):
        p.add_argument("--lnd", metavar="PATH", help="derivation JSON {ray, e, phi}")
        p.add_argument("--ray", help="ray of the tail cone, e.g. 1,0")
        p.add_argument("-e", help="degree of the derivation, e.g. -1,1")
        p.add_argument("--phi", default="1", help="rational function in t (default 1)")

    p = add("dual", cmd_dual, "dual cone of --cone or of the tail of --in")
    p.add_argument("--cone", help="generators as JSON, e.g. [[1,0],[1,2]]")
    add("check-proper", cmd_check_proper, "properness report")
    p = add("eval", cmd_eval, "evaluate D(m)")
    p.add_argument("-m", required=True, help="degree, e.g. 2,1")
    p = add("piece", cmd_piece, "graded piece A_m")
    p.add_argument("-m", required=True, help="degree, e.g. 2,1")
    p = add("classes", cmd_classes, "equivalence classes of fiber-type derivations")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p = add("srho", cmd_srho, "enumerate S_rho")
    p.add_argument("--ray", required=True)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p = add("de", cmd_de, "the divisor D_e and the space Phi_e")
    p.add_argument("--ray", required=True)
    p.add_argument("-e", required=True)
    p.add_argument("--slow", action="store_true", help="use the max over all linear pieces")
    p = add("phie", cmd_phie, "the space Phi_e")
    p.add_argument("--ray", required=True)
    p.add_argument("-e", required=True)
    lnd_args(add("mk-lnd", cmd_mk_lnd, "validate a derivation and print it"))
    p = add("apply", cmd_apply, "apply a derivation to f*chi^m")
    lnd_args(p)
    p.add_argument("--elt", required=True, help="homogeneous element 'f,m1,...,mn'")
    p = add("orbit", cmd_orbit, "exponential action exp(t d) on f*chi^m")
    lnd_args(p)
    p.add_argument("--elt", required=True, help="homogeneous element 'f,m1,...,mn'")
    p.add_argument("-t", required=True, help="rational parameter")
    p = add("kernel", cmd_kernel, "kernel weight monoid and bounded generators")
    lnd_args(p)
    p.add_argument("--bound", type=int, default=2)
    p = add("ml-fib", cmd_ml_fib, "fiber-type Makar-Limanov invariant")
    p.add_argument("--generators", type=int, metavar="B", help="also list generators up to B")
    add("fml-fib", cmd_fml_fib, "lower bound for the field invariant")
    p = add("example-trivial-ml", cmd_example_trivial_ml,
            "build (p + sigma)*H with trivial ML_fib", divisor=False)
    p.add_argument("--base", default="proj_line", help="proj_line or abstract_curve")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--at", default="inf", help="the point H")
    p.add_argument("--rank", type=int, default=2, help="rank of the orthant tail")
    p.add_argument("--tail", help="tail cone generators as JSON (overrides --rank)")
    p.add_argument("--p", help="interior lattice point of the tail (default all ones)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args)
    except SchemaError as exc:
        _error(type(exc).__name__, exc.location, exc.message)
        return EXIT_INVALID
    except FibertypeError as exc:
        _error(type(exc).__name__, args.command, str(exc))
        return EXIT_INVALID
    sys.stdout.write(io.dumps(io.envelope(args.command, report)))
    return code


def _error(kind: str, location: str, message: str):
    sys.stderr.write(io.dumps({"schema": io.SCHEMA_VERSION, "error": kind,
                               "location": location, "message": message}))


if __name__ == "__main__":
    sys.exit(main())
