import pytest

from fibertype import corpus
from fibertype.base import Base, QDivisor
from fibertype.divisor import PolyhedralDivisor, is_proper
from fibertype.errors import NotBigDivisor, NotInteriorPoint, NotProjective, NotStandardForm
from fibertype.invariants import (
    build_trivial_ml_example,
    fml_fib_lower_bound,
    ml_fib,
    standard_example_derivations,
)
from fibertype.lattice import Cone, lattice_points, pairing
from fibertype.lnd import apply, find_witness, kernel_description, list_equivalence_classes, make_lnd, ray_context
from fibertype.divisor import element

from samplers import all_divisors

P1 = Base.proj_line()
E = Base.abstract_curve(1)
Q = Cone.orthant(2)


def test_ml_fib_examples():
    r = ml_fib(corpus.trivial_ml(2))
    assert r.trivial is True and r.weight_monoid.is_zero and r.degree_zero_part == "k"
    assert r.qualifying_rays == ((0, 1), (1, 0))
    r = ml_fib(corpus.graded_plane())
    assert r.qualifying_rays == ((1,),) and r.weight_monoid.is_zero
    assert r.degree_zero_part == "k[t]" and r.trivial is False
    zero = PolyhedralDivisor.make(Base.point(), Cone.zero(2), {})
    r = ml_fib(zero)
    assert r.qualifying_rays == () and r.weight_monoid == Cone.full(2, "M") and r.trivial is False
    assert "horizontal" in r.ml and "horizontal" in r.ml_h


def test_ml_fib_generators_on_graded_plane():
    r = ml_fib(corpus.graded_plane(), bound=2)
    assert [(str(g.section), g.degree) for g in r.generators.elements] == [("t", (0,))]


def test_ml_fib_on_genus_one():
    # D(m) = m_1 (P - Q) has degree zero, so no ray qualifies; bigness is decided by degree
    dd = PolyhedralDivisor.make(E, Q, {"label:P": [(1, 0)], "label:Q": [(-1, 0)]})
    r = ml_fib(dd)
    assert r.qualifying_rays == () and r.undecided_rays == ()
    assert r.weight_monoid == dd.weight_cone and r.trivial is False
    dd = PolyhedralDivisor.make(E, Q, {"label:P": [(1, 1)], "label:Q": [(-1, 0)]})
    assert ml_fib(dd).qualifying_rays == ((1, 0),)


def test_fml_examples():
    f = fml_fib_lower_bound(corpus.trivial_ml(2))
    assert f.contains_KY and f.KY == "k(t)" and f.is_lower_bound
    assert f.lower_bound_monoid.is_zero
    f = fml_fib_lower_bound(corpus.toric_plane())
    assert f.KY == "k" and f.lower_bound_monoid.is_zero
    assert fml_fib_lower_bound(corpus.graded_plane()).KY == "k(t)"


def test_build_trivial_ml_example():
    dd = build_trivial_ml_example(P1, "inf", Q, (1, 1))
    assert dd == corpus.trivial_ml(2)
    with pytest.raises(NotInteriorPoint):
        build_trivial_ml_example(P1, "inf", Q, (1, 0))
    with pytest.raises(NotBigDivisor):
        build_trivial_ml_example(P1, QDivisor.from_dict(P1, {"0": 1, "inf": -1}), Q, (1, 1))
    with pytest.raises(NotProjective):
        build_trivial_ml_example(Base.affine_line(), "0", Q, (1, 1))


def test_standard_example_derivations():
    ds = standard_example_derivations(corpus.trivial_ml(2))
    assert [(d.ray, d.e) for d in ds] == [((1, 0), (-1, 1)), ((0, 1), (1, -1))]
    ds3 = standard_example_derivations(corpus.trivial_ml(3))
    assert len(ds3) == 6
    with pytest.raises(NotStandardForm):
        standard_example_derivations(PolyhedralDivisor.make(P1, Q, {"inf": [(1, 2)]}))
    with pytest.raises(NotStandardForm):
        skew = Cone.from_generators([(1, 0), (1, 2)])
        standard_example_derivations(PolyhedralDivisor.make(P1, skew, {"inf": [(1, 1)]}))


def test_standard_derivations_have_trivial_common_kernel():
    for n in (2, 3):
        dd = corpus.trivial_ml(n)
        ds = standard_example_derivations(dd)
        common = dd.weight_cone
        for d in ds:
            common = common.intersect(kernel_description(d, 1).weight_monoid)
        assert common.is_zero
        # on samples: an element is killed by all of them only in degree 0
        for m in lattice_points(dd.weight_cone, None, 2):
            x = element(dd, 1, m)
            assert all(apply(d, x).zero for d in ds) == (not any(m))


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("base,H", [(P1, "inf"), (P1, "1/2"), (E, "label:P")])
def test_generated_examples_have_trivial_ml_and_fml_containing_ky(n, base, H):
    dd = build_trivial_ml_example(base, H, Cone.orthant(n), (1,) * n)
    assert is_proper(dd).proper is True
    assert ml_fib(dd).trivial is True
    f = fml_fib_lower_bound(dd)
    assert f.contains_KY
    assert f.KY == ("k(t)" if base is P1 else "K_Y (function field of a genus 1 curve)")


def test_generated_example_on_skew_cone():
    sigma = Cone.from_generators([(1, 0), (1, 3)])
    dd = build_trivial_ml_example(P1, "inf", sigma, (2, 1))
    assert ml_fib(dd).trivial is True


def test_ml_monoid_matches_witness_kernels():
    for dd in all_divisors():
        if dd.base.kind.value == "abstract_curve":
            continue
        r = ml_fib(dd)
        common = dd.weight_cone
        for c in list_equivalence_classes(dd, 3):
            if c.exists is True:
                ctx = ray_context(dd.tail, c.ray)
                e, phi = c.witness_e, c.witness_phi
                for bound in (6, 12):
                    if e is None:
                        e, phi = find_witness(dd, ctx, bound)
                assert e is not None
                d = make_lnd(dd, ctx, e, phi)
                common = common.intersect(kernel_description(d, 1).weight_monoid)
        assert common == r.weight_monoid


def test_ml_and_fml_monoids_agree():
    for dd in all_divisors():
        assert ml_fib(dd).weight_monoid == fml_fib_lower_bound(dd).lower_bound_monoid


def test_kernel_elements_pair_to_zero_with_ray():
    for dd in all_divisors()[:10]:
        for c in list_equivalence_classes(dd, 2):
            if c.witness_e is None:
                continue
            d = make_lnd(dd, ray_context(dd.tail, c.ray), c.witness_e, c.witness_phi)
            for g in kernel_description(d, 1).generators.elements:
                assert pairing(g.degree, c.ray) == 0
