import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropkit.geometry.dd import cone_facets, cone_generators
from tropkit.geometry.linalg import det, integerize, lattice_index, lattice_length, primitive, rank
from tropkit.geometry.polyhedron import Polyhedron
from tropkit.geometry.subdivision import (
    Cone,
    InvalidSubdivision,
    Membership,
    PointConfiguration,
    cone_membership,
    dual_cell,
    dual_description,
    hypersimplex,
    is_unimodular,
    normal_complex,
    normalized_volume,
    regular_subdivision,
    secondary_cone,
    subdivision_faces,
    subdivision_from_cells,
    tight_span,
)
from tropkit.serialize import load_fixture

from strategies import heights

SQUARE = PointConfiguration([(0, 0), (1, 0), (0, 1), (1, 1)])
TWO_TRIANGLE = PointConfiguration([(i, j) for i in range(3) for j in range(3) if i + j <= 2])
GRID = PointConfiguration([(i, j) for i in range(3) for j in range(2)])
LINE3 = PointConfiguration([(0,), (1,), (2,)])


def argmin(cfg, h, p):
    vals = [hi + sum(a * x for a, x in zip(pt, p)) for pt, hi in zip(cfg.points, h)]
    m = min(vals)
    return frozenset(i for i, v in enumerate(vals) if v == m)


# -- linear algebra ---------------------------------------------------------


def test_primitive_and_integerize():
    assert primitive((4, -6, 0)) == (2, -3, 0)
    assert integerize((Fraction(1, 2), Fraction(1, 3))) == (3, 2)
    assert lattice_length((Fraction(2, 3), Fraction(4, 3))) == Fraction(2, 3)
    assert lattice_length((3, 6)) == 3


def test_lattice_index_examples():
    assert lattice_index([(1, 1), (1, -1)], 2) == 2
    assert lattice_index([(1, 0), (0, 1)], 2) == 1
    assert lattice_index([(2, 0, 0), (0, 3, 0), (0, 0, 1)], 3) == 6


def test_det_and_rank():
    assert det([[1, 2], [3, 4]]) == -2
    assert rank([(1, 2, 3), (2, 4, 6)]) == 1


# -- double description -----------------------------------------------------


def test_orthant():
    rays, lin = cone_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [], 3)
    assert sorted(rays) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert lin == []


def test_halfspace_has_lineality():
    rays, lin = cone_generators([(1, 0, 0)], [], 3)
    assert rank(lin) == 2 and rays == [(1, 0, 0)]


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_ray_facet_round_trip(seed):
    rng = random.Random(seed)
    gens = [tuple(rng.randint(-4, 4) for _ in range(4)) for _ in range(6)]
    # keep the cone pointed by tilting everything into x0 > 0
    gens = [(abs(g[0]) + 1,) + g[1:] for g in gens]
    cone = dual_description(Cone(4, rays=gens))
    again = dual_description(Cone(4, facets=cone.facets, equations=cone.equations))
    assert sorted(again.rays) == sorted(cone.rays)
    # every extreme ray is one of the inputs up to positive scaling
    inputs = {primitive(g) for g in gens}
    assert set(cone.rays) <= inputs
    for r in cone.rays:
        assert all(sum(a * b for a, b in zip(f, r)) >= 0 for f in cone.facets)


# -- polyhedra ---------------------------------------------------------------


def test_cube_faces():
    cube = Polyhedron.from_points(list(itertools.product((0, 1), repeat=3)))
    assert [len(cube.faces(d)) for d in range(4)] == [8, 12, 6, 1]
    assert cube.contains((Fraction(1, 2), 0, 1))
    assert not cube.in_relative_interior((Fraction(1, 2), 0, 1))
    assert cube.in_relative_interior(cube.relative_interior_point())


def test_h_and_v_agree():
    p = Polyhedron(2, inequalities=[(0, 1, 0), (0, 0, 1), (1, -1, -1)])
    assert sorted(p.points) == [(0, 0), (0, 1), (1, 0)]
    ray = Polyhedron(2, points=[(1, 1)], rays=[(1, 0)])
    assert not ray.is_bounded() and ray.contains((5, 1)) and not ray.contains((0, 1))


# -- volumes -----------------------------------------------------------------


def test_normalized_volumes():
    assert normalized_volume([(0, 0), (1, 0), (0, 1)]) == 1
    assert normalized_volume(SQUARE.points) == 2
    assert normalized_volume(hypersimplex(2, 4).points) == 4
    three_simplex = [(0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3)]
    assert normalized_volume(three_simplex) == 27
    assert normalized_volume([(0,), (5,)]) == 5


def test_hypersimplex_order():
    assert hypersimplex(2, 4).points == tuple(
        tuple(Fraction(x) for x in p)
        for p in [(1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 1, 1)]
    )
    with pytest.raises(ValueError):
        hypersimplex(0, 3)


# -- regular subdivisions ------------------------------------------------------


def test_square_split_by_one_raised_corner():
    sub = regular_subdivision(SQUARE, (0, 0, 0, 1))
    assert sub.maximal_cells == ((0, 1, 2), (1, 2, 3))
    assert is_unimodular(sub)


def test_flat_heights_give_the_trivial_subdivision():
    sub = regular_subdivision(SQUARE, (0, 0, 0, 0))
    assert sub.maximal_cells == ((0, 1, 2, 3),)
    assert not is_unimodular(sub)


def test_collinear_points():
    sub = regular_subdivision(LINE3, (1, 0, 1))
    assert sub.maximal_cells == ((0, 1), (1, 2))
    raised = regular_subdivision(LINE3, (0, 5, 0))
    assert raised.maximal_cells == ((0, 2),)


def test_subdivision_faces_of_square_triangulation():
    sub = regular_subdivision(SQUARE, (0, 0, 0, 1))
    faces = subdivision_faces(sub)
    assert len([f for f in faces if len(f) == 1]) == 4
    assert len([f for f in faces if len(f) == 2]) == 5
    assert len([f for f in faces if len(f) == 3]) == 2


def test_validate_rejects_overlaps():
    with pytest.raises(InvalidSubdivision):
        subdivision_from_cells(SQUARE, [(0, 1, 2), (0, 1, 3)])
    with pytest.raises(InvalidSubdivision):
        subdivision_from_cells(SQUARE, [(0, 1, 2)])
    subdivision_from_cells(SQUARE, [(0, 1, 2), (1, 2, 3)])


def test_wrong_number_of_heights():
    with pytest.raises(ValueError):
        regular_subdivision(SQUARE, (0, 1))


configs = st.sampled_from([SQUARE, TWO_TRIANGLE, GRID, LINE3])
points2 = st.tuples(
    st.fractions(-8, 8, max_denominator=7), st.fractions(-8, 8, max_denominator=7)
)


@settings(max_examples=60)
@given(configs.flatmap(lambda c: st.tuples(st.just(c), st.lists(heights, min_size=len(c), max_size=len(c)))), st.lists(points2, min_size=20, max_size=20))
def test_pointwise_argmin_lies_in_a_cell(ch, samples):
    cfg, h = ch
    sub = regular_subdivision(cfg, h)
    cells = [set(c) for c in sub.maximal_cells]
    for p in samples:
        a = argmin(cfg, h, p[: cfg.dim])
        assert any(a <= c for c in cells)


@settings(max_examples=40)
@given(configs.flatmap(lambda c: st.tuples(st.just(c), st.lists(heights, min_size=len(c), max_size=len(c)))))
def test_duality_reverses_dimensions(ch):
    cfg, h = ch
    nc = normal_complex(cfg, h)
    for face, cell in zip(nc.dual_faces, nc.cell_polyhedra):
        fdim = PointConfiguration(cfg.points[i] for i in face).affine_dim
        assert fdim + cell.affine_dim == cfg.dim


# -- secondary cones -----------------------------------------------------------


def test_secondary_cone_of_collinear_points():
    sub = regular_subdivision(LINE3, (1, 0, 1))
    cone = secondary_cone(sub)
    assert [tuple(f) for f in cone.facets] == [(1, -2, 1)]
    assert rank(cone.lineality) == 2
    assert cone_membership(cone, (1, 0, 1))[0] is Membership.INTERIOR
    assert cone_membership(cone, (0, 0, 0))[0] is Membership.BOUNDARY
    assert cone_membership(cone, (0, 1, 0))[0] is Membership.OUTSIDE


def test_secondary_cone_of_square_triangulation():
    cone = secondary_cone(regular_subdivision(SQUARE, (0, 0, 0, 1)))
    assert len(cone.facets) == 1
    assert cone_membership(cone, (0, 0, 0, 1))[0] is Membership.INTERIOR
    assert cone_membership(cone, (0, 0, 0, 0))[0] is Membership.BOUNDARY
    assert cone_membership(cone, (1, 0, 0, 0))[0] is Membership.INTERIOR
    assert cone_membership(cone, (0, 1, 0, 0))[0] is Membership.OUTSIDE


def test_secondary_cone_of_a_simplex_is_everything():
    cone = secondary_cone(regular_subdivision(PointConfiguration([(0, 0), (1, 0), (0, 1)]), (3, 1, 4)))
    assert cone.facets == [] and cone.equations == []


def test_unused_points_give_an_inequality():
    # the middle point is lifted above the segment
    sub = regular_subdivision(LINE3, (0, 5, 0))
    cone = secondary_cone(sub)
    assert [tuple(f) for f in cone.facets] == [(-1, 2, -1)]
    assert cone_membership(cone, (0, 5, 0))[0] is Membership.INTERIOR


def test_membership_dimension_check():
    cone = secondary_cone(regular_subdivision(LINE3, (1, 0, 1)))
    with pytest.raises(ValueError):
        cone_membership(cone, (1, 0))


@settings(max_examples=40)
@given(configs.flatmap(lambda c: st.tuples(st.just(c), st.lists(heights, min_size=len(c), max_size=len(c)))))
def test_inducing_heights_are_interior(ch):
    cfg, h = ch
    sub = regular_subdivision(cfg, h)
    verdict, products, eqs = cone_membership(secondary_cone(sub), h)
    assert verdict is Membership.INTERIOR
    assert all(e == 0 for e in eqs)


@settings(max_examples=30)
@given(st.lists(heights, min_size=6, max_size=6), st.lists(heights, min_size=6, max_size=6))
def test_secondary_cone_membership_matches_recomputed_subdivision(h, g):
    sub = regular_subdivision(TWO_TRIANGLE, h)
    verdict, _, _ = cone_membership(secondary_cone(sub), g)
    other = regular_subdivision(TWO_TRIANGLE, g)
    if verdict is Membership.INTERIOR:
        assert other.maximal_cells == sub.maximal_cells
    elif verdict is Membership.BOUNDARY:
        # g induces a coarsening: every cell of sub sits inside a cell of other
        assert all(any(set(c) <= set(d) for d in other.maximal_cells) for c in sub.maximal_cells)
        assert other.maximal_cells != sub.maximal_cells
    else:
        assert not all(any(set(c) <= set(d) for d in other.maximal_cells) for c in sub.maximal_cells)


# -- normal complexes and tight spans ----------------------------------------------


def test_normal_complex_of_collinear_points():
    nc = normal_complex(LINE3, (1, 0, 1))
    bounded = sorted(p[1] for p in nc.complex.vertices if p[0] == 1)
    assert bounded == [-1, 1]
    assert dual_cell(LINE3, (1, 0, 1), {1}).contains((0,))
    assert len(nc.complex.cells) == len(subdivision_faces(nc.subdivision))


def test_tight_span_faces_are_the_bounded_normal_cells():
    vm = load_fixture("plucker_3_6.json", "valuated_matroid")
    sub = vm.subdivision
    chart, _ = sub.config.chart()
    ts = tight_span(sub)
    bounded = []
    for face in subdivision_faces(sub):
        if dual_cell(chart, sub.heights, face).is_bounded():
            labels = frozenset(k for k, c in enumerate(sub.maximal_cells) if face <= set(c))
            bounded.append(labels)
    maximal = {b for b in bounded if not any(b < o for o in bounded)}
    assert maximal == set(ts.cells)
    assert sorted(len(c) for c in ts.cells) == [2, 2, 4]


def test_tight_span_requires_heights():
    sub = subdivision_from_cells(SQUARE, [(0, 1, 2), (1, 2, 3)])
    with pytest.raises(ValueError):
        tight_span(sub)


def test_chart_of_hypersimplex_drops_last_coordinate():
    chart, piv = hypersimplex(2, 4).chart()
    assert piv == [0, 1, 2] and chart.dim == 3


def test_cone_facets_of_the_plane():
    facets, eqs = cone_facets([(1, 0), (0, 1)], [], 2)
    assert sorted(facets) == [(0, 1), (1, 0)] and eqs == []
