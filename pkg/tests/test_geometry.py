import itertools
import random
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facialcycles import geometry
from facialcycles.corpus import cube, cyclic, simplex
from facialcycles.exceptions import (
    DuplicatePoint,
    MixedDimensions,
    NonVertexPoint,
    NotALattice,
    NotFullDimensional,
)
from facialcycles.geometry import (
    Polytope,
    affine_dimension,
    build_face_lattice,
    facet_as_polytope,
    facet_enumeration,
    facet_hyperplanes,
)

UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def facet_sets(points):
    return [vs for _, vs in facet_enumeration(points)]


@pytest.mark.parametrize("points, expected", [
    ([(3, 4)], 0),
    (UNIT_SQUARE, 2),
    (list(itertools.product((0, 1), repeat=3)), 3),
    ([(0, 0, 0), (1, 1, 1), (2, 2, 2)], 1),
])
def test_affine_dimension(points, expected):
    assert affine_dimension(points) == expected


def test_affine_dimension_mixed_lengths():
    with pytest.raises(MixedDimensions):
        affine_dimension([(0, 0), (1, 0, 0)])


def test_facets_of_square():
    fs = facet_sets(UNIT_SQUARE)
    assert fs == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_facets_of_simplex():
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)]
    fs = facet_sets(pts)
    assert len(fs) == 4
    assert all(len(f) == 3 for f in fs)


def test_facets_of_cube_match_coordinate_planes():
    pts = list(itertools.product((0, 1), repeat=3))
    expected = sorted(
        tuple(i for i, p in enumerate(pts) if p[axis] == val)
        for axis in range(3) for val in (0, 1))
    assert facet_sets(pts) == expected


def test_hyperplanes_are_supporting_and_outward():
    pts = cube(3)
    for h, vs in facet_enumeration(pts):
        for i, p in enumerate(pts):
            val = h.eval(p)
            assert val == 0 if i in vs else val < 0


def test_exactness_against_integer_recomputation():
    pts = [tuple(Fraction(a, b) for a, b in row) for row in
           [((1, 3), (2, 7), (0, 1)), ((5, 3), (1, 7), (1, 2)), ((1, 9), (9, 7), (3, 2)),
            ((2, 3), (4, 7), (5, 2)), ((7, 3), (5, 7), (1, 5))]]
    for h, vs in facet_enumeration(pts):
        for i, p in enumerate(pts):
            # numerator of normal.p - offset over a common denominator, in pure ints
            den = 1
            for c in list(p) + [h.offset]:
                den = den * c.denominator
            num = sum(int(a * c * den) for a, c in zip(h.normal, p)) - int(h.offset * den)
            assert Fraction(num, den) == h.eval(p)
            assert (num == 0) == (i in vs)


def test_not_full_dimensional():
    with pytest.raises(NotFullDimensional):
        facet_enumeration([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])


def test_non_vertex_interior_point():
    with pytest.raises(NonVertexPoint) as exc:
        facet_enumeration(UNIT_SQUARE + [(Fraction(1, 2), Fraction(1, 2))])
    assert exc.value.index == 4


def test_non_vertex_boundary_point():
    with pytest.raises(NonVertexPoint) as exc:
        facet_enumeration([(0, 0), (1, 0), (Fraction(1, 2), 0), (0, 1)])
    assert exc.value.index == 2


def test_duplicate_point():
    with pytest.raises(DuplicatePoint):
        facet_enumeration(UNIT_SQUARE + [(1, 1)])


@pytest.mark.parametrize("points, fvec", [
    (cube(3), (8, 12, 6)),
    (simplex(3), (4, 6, 4)),
    (cube(4), (16, 32, 24, 8)),
    (simplex(4), (5, 10, 10, 5)),
])
def test_face_lattice_f_vectors(points, fvec):
    lat = build_face_lattice(facet_sets(points), len(points), points)
    assert lat.f_vector == fvec


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_cube_f_vector_matches_product_formula(d):
    lat = Polytope.from_points(cube(d)).lattice
    assert lat.f_vector == tuple(2 ** (d - k) * comb(d, k) for k in range(d))


def test_lattice_invariants(small_corpus):
    for poly in small_corpus.values():
        lat = poly.lattice
        assert lat.faces_by_dim[0] == tuple((i,) for i in range(lat.vertex_count))
        faces = [set(f) for fs in lat.faces_by_dim for f in fs]
        keys = {tuple(sorted(f)) for f in faces}
        for k in range(1, lat.polytope_dim):
            for f in lat.faces_by_dim[k]:
                subs = [set(g) for g in lat.faces_by_dim[k - 1] if set(g) <= set(f)]
                assert set().union(*subs) == set(f)
        for a, b in itertools.combinations(faces, 2):
            c = a & b
            assert not c or tuple(sorted(c)) in keys
        fv = lat.f_vector
        assert sum((-1) ** k * x for k, x in enumerate(fv)) == 1 - (-1) ** lat.polytope_dim
        if lat.polytope_dim == 3:
            assert fv[0] - fv[1] + fv[2] == 2


def test_induced_edges_in_facets(small_corpus):
    for poly in small_corpus.values():
        lat = poly.lattice
        for facet in lat.facets:
            inside = lat.faces_within(facet)
            for e in lat.edges:
                if set(e) <= set(facet) and e != facet:
                    assert e in inside[1]


def test_lattice_facets_roundtrip(cube4):
    lat = cube4.lattice
    again = build_face_lattice(lat.facets, lat.vertex_count)
    assert again.faces_by_dim == lat.faces_by_dim
    assert again.facets == tuple(facet_sets(cube(4)))


def test_lattice_rejects_missing_facet():
    fs = facet_sets(cube(3))
    with pytest.raises(NotALattice):
        build_face_lattice(fs[1:], 8)


def test_lattice_rejects_non_polytope():
    # two triangles glued along an edge is not a facet list of a polytope
    with pytest.raises(NotALattice):
        build_face_lattice([(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)], 4)


def test_lattice_rejects_facets_disagreeing_with_points():
    fs = facet_sets(UNIT_SQUARE)
    with pytest.raises(NotALattice):
        build_face_lattice([(0, 2), (1, 3)] + fs[:2], 4, UNIT_SQUARE)


@pytest.mark.parametrize("name, fvec", [("cube3", (4, 4)), ("cube4", (8, 12, 6)),
                                        ("simplex3", (3, 3))])
def test_facet_as_polytope(name, fvec):
    from conftest import polytope

    poly = polytope(name)
    for i in range(len(poly.lattice.facets)):
        sub, pts = facet_as_polytope(poly.lattice, poly.points, i)
        assert sub.f_vector == fvec
        assert len(pts[0]) == poly.dim - 1
        assert affine_dimension(pts) == poly.dim - 1
        # the projected points generate the same lattice
        again = Polytope.from_points(pts).lattice
        assert again.faces_by_dim == sub.faces_by_dim


def test_cyclic_polytope_facet_count():
    # upper bound theorem: f_{d-1}(C(n, 4)) = n(n-3)/2
    for n in (6, 7, 8):
        assert len(facet_sets(cyclic(n, 4))) == n * (n - 3) // 2


def test_hexagonal_prism(hexprism):
    assert hexprism.lattice.f_vector == (12, 18, 8)
    sizes = sorted(len(f) for f in hexprism.lattice.facets)
    assert sizes == [4] * 6 + [6, 6]


def _float_hull_facets(points):
    scipy_spatial = pytest.importorskip("scipy.spatial")
    arr = np.array([[float(c) for c in p] for p in points])
    hull = scipy_spatial.ConvexHull(arr)
    out = set()
    for eq in hull.equations:
        vals = arr @ eq[:-1] + eq[-1]
        out.add(tuple(int(i) for i in np.flatnonzero(np.abs(vals) < 1e-9)))
    return sorted(out)


def test_facets_agree_with_float_hull_on_random_points():
    rng = random.Random(5)
    for _ in range(15):
        d = rng.choice([2, 3, 4])
        pts = {tuple(rng.randint(-6, 6) for _ in range(d)) for _ in range(d + 6)}
        pts = sorted(pts)
        if affine_dimension(pts) != d:
            continue
        keep = geometry.extreme_point_indices(pts)
        pts = [pts[i] for i in keep]
        assert facet_sets(pts) == _float_hull_facets(pts)


def test_numpy_and_python_paths_agree():
    rng = random.Random(11)
    for _ in range(20):
        d = rng.choice([2, 3, 4])
        pts = sorted({tuple(rng.randint(-5, 5) for _ in range(d)) for _ in range(d + 5)})
        if affine_dimension(pts) != d:
            continue
        q = geometry._integerize(geometry.as_points(pts))
        assert sorted(geometry._supporting_facets_np(q, d)) == \
            sorted(geometry._supporting_facets_py(q, d))


def test_large_coordinates_fall_back_to_python_ints():
    big = 10 ** 12
    pts = [(0, 0, 0), (big, 0, 0), (0, big, 0), (0, 0, big), (big, big, big)]
    q = geometry._integerize(geometry.as_points(pts))
    assert not geometry._int64_safe(q, 3)
    assert len(facet_sets(pts)) == 6


def test_facet_hyperplanes_match_enumeration(cube4):
    hs = facet_hyperplanes(cube4.lattice, cube4.points)
    expected = [h for h, _ in facet_enumeration(cube4.points)]
    for a, b in zip(hs, expected):
        ratio = [x / y for x, y in zip(a.normal, b.normal) if y]
        assert len(set(ratio)) == 1 and ratio[0] > 0


coord = st.integers(min_value=-4, max_value=4)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(coord, coord, coord), min_size=5, max_size=9, unique=True),
       st.randoms(use_true_random=False),
       st.tuples(coord, coord, coord),
       st.fractions(min_value=Fraction(1, 5), max_value=5))
def test_facets_invariant_under_permutation_translation_scaling(pts, rnd, shift, scale):
    if affine_dimension(pts) != 3:
        return
    pts = [pts[i] for i in geometry.extreme_point_indices(pts)]
    base = {frozenset(f) for f in facet_sets(pts)}
    perm = list(range(len(pts)))
    rnd.shuffle(perm)
    moved = [tuple(scale * (c + s) for c, s in zip(pts[i], shift)) for i in perm]
    got = {frozenset(perm[i] for i in f) for f in facet_sets(moved)}
    assert got == base
