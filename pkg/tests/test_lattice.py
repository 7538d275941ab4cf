import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibertype.errors import NotARay, NotPointed, RankMismatch
from fibertype.lattice import (
    Cone,
    contains,
    dual_cone,
    face_dual_to_ray,
    hilbert_basis,
    in_relint,
    lattice_points,
    pairing,
    rays,
)

from oracles import hilbert_basis_brute, in_cone_lp, in_dual_brute


def cone(*gens, rank=None, space="N"):
    return Cone.from_generators(gens, rank, space)


def set_equal(a: Cone, b: Cone) -> bool:
    return a.contains_cone(b) and b.contains_cone(a)


# -- examples -----------------------------------------------------------------

def test_quadrant_is_self_dual():
    q = cone((1, 0), (0, 1))
    assert set(dual_cone(q).rays) == {(1, 0), (0, 1)}
    assert dual_cone(q).space == "M"


def test_dual_of_zero_cone_is_everything():
    d = dual_cone(Cone.zero(2))
    assert d.inequalities == ()
    assert d.is_full_dimensional and len(d.lineality) == 2


def test_dual_of_skew_cone():
    d = dual_cone(cone((1, 0), (1, 2)))
    assert d.rays == ((0, 1), (2, -1))
    for u in d.rays:
        for v in [(1, 0), (1, 2)]:
            assert pairing(u, v) >= 0


def test_rays_examples():
    assert rays(Cone.orthant(2)) == [(0, 1), (1, 0)]
    assert rays(cone((1, 0), (1, 1), (0, 1))) == [(0, 1), (1, 0)]
    assert rays(Cone.zero(2)) == []
    with pytest.raises(NotPointed):
        rays(cone((1, 0), (-1, 0), (0, 1)))


def test_face_dual_to_ray_examples():
    tau = face_dual_to_ray(Cone.orthant(2), (1, 0))
    assert tau.space == "M" and tau.rays == ((0, 1),)
    assert face_dual_to_ray(Cone.orthant(1), (1,)).is_zero
    with pytest.raises(NotARay):
        face_dual_to_ray(Cone.orthant(2), (1, 1))


def test_contains_and_relint_examples():
    q = Cone.orthant(2)
    assert contains(q, (1, 1)) and in_relint(q, (1, 1))
    assert contains(q, (0, 1)) and not in_relint(q, (0, 1))
    tau = cone((0, 1), space="M")
    assert in_relint(tau, (0, 2))
    with pytest.raises(RankMismatch):
        contains(q, (1, 1, 1))


def test_hilbert_basis_examples():
    assert hilbert_basis(Cone.orthant(2)) == [(0, 1), (1, 0)]
    assert hilbert_basis(cone((0, 1), (2, -1))) == [(0, 1), (1, 0), (2, -1)]
    assert hilbert_basis(cone((1, 0), rank=2)) == [(1, 0)]
    with pytest.raises(NotPointed):
        hilbert_basis(Cone.full(2))


def test_lattice_points_examples():
    q = Cone.orthant(2)
    assert lattice_points(q, None, 1) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    half = Cone.from_inequalities([(0, 1)], 2, "M")
    pts = lattice_points(half, (-1, 0), 1)
    assert pts == [(a, b) for a in (-1, 0, 1) for b in (0, 1)]
    assert lattice_points(q, None, 0) == [(0, 0)]
    assert lattice_points(q, (1, 0), 0) == []


# -- properties -----------------------------------------------------------------

vectors2 = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
vectors3 = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
cones2 = st.lists(vectors2, min_size=0, max_size=4).map(lambda g: Cone.from_generators(g, 2))
cones3 = st.lists(vectors3, min_size=0, max_size=5).map(lambda g: Cone.from_generators(g, 3))


@settings(max_examples=150, deadline=None)
@given(st.one_of(cones2, cones3))
def test_double_dual_is_identity(c):
    assert c.dual().dual() == c
    assert set_equal(c.dual().dual(), c)


@settings(max_examples=150, deadline=None)
@given(st.one_of(cones2, cones3))
def test_dual_generators_pair_nonnegatively(c):
    for u in c.dual().generators:
        for v in c.generators:
            assert pairing(u, v) >= 0


@settings(max_examples=60, deadline=None)
@given(st.lists(vectors2, min_size=1, max_size=4))
def test_membership_matches_lp_oracle(gens):
    c = Cone.from_generators(gens, 2)
    d = c.dual()
    for v in itertools.product(range(-3, 4), repeat=2):
        assert c.contains(v) == in_cone_lp([g for g in gens if any(g)], v)
        assert d.contains(v) == in_dual_brute(gens, v)


@settings(max_examples=100, deadline=None)
@given(st.one_of(cones2, cones3), st.one_of(vectors2, vectors3))
def test_relint_implies_contains(c, v):
    if len(v) != c.rank:
        return
    if c.in_relint(v):
        assert c.contains(v)


def _pointed_full(gens, n):
    c = Cone.from_generators(gens, n)
    return c if c.is_pointed and c.is_full_dimensional else None


@settings(max_examples=80, deadline=None)
@given(st.one_of(st.lists(vectors2, min_size=2, max_size=4).map(lambda g: _pointed_full(g, 2)),
                 st.lists(vectors3, min_size=3, max_size=5).map(lambda g: _pointed_full(g, 3))))
def test_rays_biject_with_codim_one_faces(sigma):
    if sigma is None:
        return
    faces = [face_dual_to_ray(sigma, r) for r in rays(sigma)]
    assert all(f.dim == sigma.rank - 1 for f in faces)
    assert len(set(faces)) == len(faces) == len(sigma.dual().facets)
    for f in faces:
        assert sigma.dual().contains_cone(f)


HB_CONES = [
    [(1, 0), (0, 1)],
    [(0, 1), (2, -1)],
    [(1, 0), (1, 3)],
    [(1, 0), (1, 5)],
    [(2, -1), (-1, 2)],
    [(1, 1), (-1, 1)],
    [(3, 1), (1, 2)],
    [(1, 0, 0), (0, 1, 0), (1, 1, 2)],
    [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)],
]


@pytest.mark.parametrize("gens", HB_CONES)
def test_hilbert_basis_matches_brute_force(gens):
    n = len(gens[0])
    c = Cone.from_generators(gens, n)
    hb = hilbert_basis(c)
    radius = 6 if n == 2 else 3
    assert hb == hilbert_basis_brute(gens, n, radius)


@pytest.mark.parametrize("gens", HB_CONES[:7])
def test_hilbert_basis_generates_bounded_points(gens):
    c = Cone.from_generators(gens, 2)
    hb = hilbert_basis(c)
    memo = {(0, 0): True}

    def generated(v):
        # v - h stays in the cone and drops the grade, so the recursion ends
        if v not in memo:
            memo[v] = any(c.contains(w) and generated(w)
                          for w in ((v[0] - h[0], v[1] - h[1]) for h in hb))
        return memo[v]

    assert all(generated(v) for v in lattice_points(c, None, 6))
