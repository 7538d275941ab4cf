import itertools
import random
from fractions import Fraction

import pytest

from fibertype import corpus
from fibertype.base import Base, QDivisor, RationalSection, degree, round_down, section_in
from fibertype.divisor import (
    GradedElement,
    HomogeneousElement,
    PolyhedralDivisor,
    dimension,
    element,
    evaluate,
    generator_candidates,
    graded_piece,
    is_proper,
    multiply,
)
from fibertype.errors import MembershipViolation, OutsideDualCone, TailMismatch, Unsupported
from fibertype.lattice import Cone, lattice_points

P1 = Base.proj_line()
Q = Cone.orthant(2)
S4 = corpus.trivial_ml(2)


def strs(elts):
    return [(str(x.section), x.degree) for x in elts]


def test_evaluate_examples():
    assert evaluate(S4, (2, 1)) == QDivisor.from_dict(P1, {"inf": 3})
    assert evaluate(S4, (0, 0)).is_zero()
    dd = PolyhedralDivisor.make(P1, Q, {"0": [(0, 0), (1, -1)]})
    assert evaluate(dd, (1, 2)) == QDivisor.from_dict(P1, {"0": -1})
    with pytest.raises(OutsideDualCone):
        evaluate(S4, (-1, 0))


def test_coefficients_equal_to_tail_are_dropped():
    dd = PolyhedralDivisor.make(P1, Q, {"0": [(0, 0)], "1": [(0, 0), (1, 1)]})
    assert dd.coeffs == ()
    with pytest.raises(TailMismatch):
        from fibertype.polyhedra import TailedPolyhedron
        PolyhedralDivisor.make(P1, Q, {"0": TailedPolyhedron.tail_only(Cone.from_generators([(1, 0), (1, 1)]))})


def test_is_proper_examples():
    assert is_proper(S4).proper is True
    r = is_proper(corpus.zero_on_line())
    assert r.proper is False and r.big is False and r.semiample is True
    assert is_proper(corpus.toric_plane()).proper is True
    assert is_proper(corpus.graded_plane()).proper is True
    assert is_proper(corpus.genus_one_degree_zero()).proper is False
    # degree vanishes only on a boundary ray
    assert is_proper(PolyhedralDivisor.make(P1, Q, {"inf": [(1, 0)]})).proper is True
    # degree m_1 - m_2 is negative at (0, 1)
    assert is_proper(PolyhedralDivisor.make(P1, Q, {"inf": [(1, -1)]})).proper is False


def test_is_proper_unknown_on_genus_one():
    E = Base.abstract_curve(1)
    # degree m_1 - m_1 = 0 in direction (1, 0), positive elsewhere
    dd = PolyhedralDivisor.make(E, Q, {"label:P": [(1, 1)], "label:Q": [(-1, 0)]})
    r = is_proper(dd)
    assert r.semiample is None and r.big is True and r.proper is None
    assert ("semiample", (1, 0)) in r.witnesses


def test_graded_piece_examples():
    p = graded_piece(S4, (1, 0))
    assert p.dimension.value == 2 and p.basis == (RationalSection(1), RationalSection("t"))
    p = graded_piece(S4, (0, 0))
    assert p.dimension.value == 1 and p.basis == (RationalSection(1),)
    ex1 = corpus.graded_plane()
    for m in range(4):
        p = graded_piece(ex1, (m,))
        assert p.dimension.kind == "infinite" and p.dimension.generator == RationalSection(1)
    for m1, m2 in itertools.product(range(4), repeat=2):
        assert graded_piece(S4, (m1, m2)).dimension.value == m1 + m2 + 1


def test_multiply_examples():
    a = element(S4, "t", (1, 0))
    assert multiply(S4, a, element(S4, 1, (0, 1))) == element(S4, "t", (1, 1))
    one = element(S4, 1, (0, 0))
    assert multiply(S4, one, a) == a
    assert multiply(S4, a, a) == element(S4, "t^2", (2, 0))
    with pytest.raises(MembershipViolation):
        element(S4, "t^2", (1, 0))


def test_dimension_examples():
    assert dimension(S4) == 3
    assert dimension(PolyhedralDivisor.make(Base.point(), Cone.orthant(4), {})) == 4
    assert dimension(corpus.graded_plane()) == 2


def test_generator_candidates_examples():
    toric = generator_candidates(corpus.toric_plane(), 2)
    assert strs(toric.elements) == [("1", (0, 1)), ("1", (1, 0))] and toric.certified
    s4 = generator_candidates(S4, 1)
    assert strs(s4.elements) == [("1", (0, 1)), ("t", (0, 1)), ("1", (1, 0)), ("t", (1, 0))]
    assert not s4.certified
    assert strs(generator_candidates(S4, 3).elements) == strs(s4.elements)
    ex1 = generator_candidates(corpus.graded_plane(), 1)
    assert strs(ex1.elements) == [("t", (0,)), ("1", (1,))]
    with pytest.raises(Unsupported):
        generator_candidates(corpus.genus_one_degree_zero(), 1)


def test_generator_candidates_skew_toric_matches_hilbert_basis():
    sigma = Cone.from_generators([(1, 0), (1, 2)])
    dd = PolyhedralDivisor.make(Base.point(), sigma, {})
    assert [x.degree for x in generator_candidates(dd, 1).elements] == [(0, 1), (1, 0), (2, -1)]


def _products_span(dd, gens, m):
    """Dimension of the span of monomials in ``gens`` of degree ``m`` (brute force)."""
    import sympy
    t = sympy.Symbol("t")
    vecs = []

    def rec(i, deg, f):
        if deg == m:
            vecs.append(f)
        if i == len(gens):
            return
        g = gens[i]
        rec(i + 1, deg, f)
        d2, f2 = deg, f
        for _ in range(4):
            d2 = tuple(a + b for a, b in zip(d2, g.degree))
            if any(x > y for x, y in zip(d2, m)):
                break
            f2 = f2 * g.section
            rec(i + 1, d2, f2)

    rec(0, (0,) * len(m), RationalSection(1))
    exprs = {sympy.simplify(v.value.as_expr()) for v in vecs}
    if not exprs:
        return 0
    # rank of the coefficient matrix after clearing the common denominator
    polys = [sympy.Poly(sympy.cancel(e * t ** 8), t) for e in exprs]
    deg = max(p.degree() for p in polys)
    rows = [[p.coeff_monomial(t ** k) for k in range(deg + 1)] for p in polys]
    return sympy.Matrix(rows).rank()


def test_generators_span_low_degrees_of_trivial_example():
    gens = list(generator_candidates(S4, 1).elements)
    for m in [(1, 1), (2, 0), (2, 1), (0, 3)]:
        assert _products_span(S4, gens, m) == graded_piece(S4, m).dimension.value


# -- properties on the random corpus ------------------------------------------

CORPUS = corpus.random_corpus()


def _degrees(dd, bound=3):
    return lattice_points(dd.weight_cone, None, bound)


def test_concavity_of_evaluation():
    rng = random.Random(5)
    for dd in CORPUS:
        ms = _degrees(dd)
        for _ in range(20):
            a, b = rng.choice(ms), rng.choice(ms)
            s = tuple(x + y for x, y in zip(a, b))
            lhs = evaluate(dd, s)
            rhs = evaluate(dd, a) + evaluate(dd, b)
            assert rhs <= lhs


def test_multiply_never_violates_membership():
    rng = random.Random(6)
    checked = 0
    for dd in CORPUS:
        ms = _degrees(dd, 2)
        for _ in range(8):
            a, b = rng.choice(ms), rng.choice(ms)
            pa, pb = graded_piece(dd, a), graded_piece(dd, b)
            if not pa.basis or not pb.basis:
                continue
            x = HomogeneousElement(rng.choice(pa.basis), a, False, dd)
            y = HomogeneousElement(rng.choice(pb.basis), b, False, dd)
            z = multiply(dd, x, y)
            assert section_in(z.section, evaluate(dd, z.degree))
            checked += 1
    assert checked > 50


def test_piece_dimension_matches_spanning_filter():
    """Filter t^j * prod (t - a)^k over a generous range; also compare with Riemann-Roch on P^1."""
    rng = random.Random(8)
    for dd in CORPUS[:20]:
        for m in rng.sample(_degrees(dd, 2), 3):
            d = evaluate(dd, m)
            pts = [p for p, _ in d.terms if p != "inf"]
            piece = graded_piece(dd, m)
            # candidates: t^j times any pole pattern allowed at the finite points
            survivors = []
            lo = {p: -int(Fraction(d[p]).__floor__()) for p in pts}
            for j in range(0, 40):
                f = RationalSection.monomial(1, {**lo, Fraction(0): lo.get(Fraction(0), 0) + j}) \
                    if pts else RationalSection("t") ** j
                if section_in(f, d):
                    survivors.append(f)
            assert len(survivors) == piece.dimension.value
            assert piece.dimension.value == max(0, degree(round_down(d)) + 1)


def test_proper_verdict_matches_concavity_oracle():
    """Big on the open weight cone iff deg >= 0 on its generators and > 0 at one interior point."""
    for dd in CORPUS + [corpus.zero_on_line(), corpus.trivial_ml(3)]:
        wc = dd.weight_cone
        degs = [degree(evaluate(dd, g)) for g in wc.generators]
        q = wc.relint_point if wc.rays else tuple(sum(x) for x in zip(*wc.lineality))
        oracle = all(x >= 0 for x in degs) and degree(evaluate(dd, q)) > 0
        assert is_proper(dd).big == oracle


def test_graded_element_arithmetic():
    a = GradedElement({(1, 0): RationalSection(1), (0, 1): RationalSection("t")})
    b = GradedElement({(1, 0): RationalSection(-1)})
    assert (a + b) == GradedElement({(0, 1): RationalSection("t")})
    assert (a * b).terms == {(2, 0): RationalSection(-1), (1, 1): RationalSection("-t")}
