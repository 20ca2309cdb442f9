"""Acceptance gate: one test (or a few) per criterion, with the stated time budgets.

Run ``pytest tests/test_acceptance.py`` for a per-criterion PASS/FAIL summary,
or execute this file directly.
"""

import itertools
import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from tropkit.arith import MinNumber, Permutation, TropicalMatrix, kleene_star, tdet
from tropkit.auctions import competitive_equilibria
from tropkit.cycles import bounded_complex, is_balanced, stable_intersection
from tropkit.geometry.subdivision import (
    Membership,
    coarsest_subdivision_of_ray,
    cone_membership,
    dual_description,
    normalized_volume,
    secondary_cone,
    tight_span,
)
from tropkit.linspace import ValuatedMatroid, bergman_fan_from_flats, linear_space, trivial_valuation
from tropkit.matroids import (
    check_basis_exchange_axiom,
    direct_sum,
    fano_matroid,
    tutte_corank_nullity,
    tutte_polynomial,
    uniform_matroid,
)
from tropkit.polysurf import (
    TropicalPolynomial,
    curve_edge_lengths,
    genus,
    hypersurface,
    hypersurface_degree,
    is_smooth,
    parse_tropical_polynomial,
    skeleton,
)
from tropkit.rational import INF
from tropkit.serialize import fixture_path, load_fixture

from matroid_gen import random_matroid

criterion = pytest.mark.criterion


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.3f}s, budget {self.seconds}s"


A = [[1, 2, 3], [1, 2, 4], [1, 0, 1]]


@pytest.fixture(scope="module")
def cubic():
    return hypersurface(parse_tropical_polynomial(fixture_path("cubic_surface.txt").read_text()))


@pytest.fixture(scope="module")
def quartic():
    return hypersurface(load_fixture("quartic_curve.json", "polynomial"))


@criterion(1, "tropical arithmetic: 3*8=11, 5*8=13, (3+5)*8=11, 3*inf=inf")
def test_arithmetic():
    with Budget(0.001):
        a, b, c = MinNumber(3), MinNumber(5), MinNumber(8)
        got = [a * c, b * c, (a + b) * c, a * MinNumber(INF)]
    assert [str(x) for x in got] == ["11", "13", "11", "inf"]


@criterion(2, "Kleene star equals I+A and I+A+A*A")
def test_kleene_star():
    a = TropicalMatrix(A)
    i = TropicalMatrix.identity(3)
    expected = TropicalMatrix([[0, 2, 3], [1, 0, 4], [1, 0, 0]])
    assert kleene_star(a) == expected
    assert i + a == expected
    assert i + a + a * a == expected


@criterion(3, "tropical determinant 4 <0 1 2>; brute force on 100 random 5x5")
def test_tropical_determinant():
    value, perm = tdet(TropicalMatrix(A))
    assert value == 4 and perm == Permutation.identity(3) and str(perm) == "<0 1 2>"
    rng = random.Random(3)
    with Budget(5):
        for _ in range(100):
            rows = [[Fraction(rng.randint(-100, 100), rng.randint(1, 9)) for _ in range(5)] for _ in range(5)]
            best = min(sum(rows[i][s[i]] for i in range(5)) for s in itertools.permutations(range(5)))
            v, p = tdet(TropicalMatrix(rows))
            assert v == best
            assert sum(rows[i][p[i]] for i in range(5)) == best


@criterion(4, "cubic surface: degree 3, 27 maximal cells, smooth")
def test_cubic_surface():
    with Budget(30):
        h = hypersurface(parse_tropical_polynomial(fixture_path("cubic_surface.txt").read_text()))
        assert hypersurface_degree(h) == 3
        assert h.dual_subdivision.n_maximal_cells == 27
        assert is_smooth(h)


@criterion(5, "auction equilibrium counts; no equilibrium only at (1,1)")
def test_auction():
    expected = {(0, 0): 2, (1, 0): 1, (1, 3): 2, (0, 1): 2, (1, 1): 0, (0, 2): 2, (1, 2): 5, (2, 2): 2, (0, 3): 1}
    with Budget(10):
        counts = competitive_equilibria(load_fixture("tran_yu_ex2.json", "auction"))
    assert counts == expected
    assert [b for b, c in counts.items() if c == 0] == [(1, 1)]


@criterion(6, "secondary cone: 12 rays, splits 2^9 3^3, facet products 4^6 (8/3)^3 (4/3)^3")
def test_secondary_cone():
    with Budget(60):
        sub = load_fixture("quartic_triangulation.json", "subdivision")
        cone = dual_description(secondary_cone(sub))
        splits = Counter(coarsest_subdivision_of_ray(sub.config, r).n_maximal_cells for r in cone.rays)
        coeffs = load_fixture("quartic_curve.json", "polynomial").coefficients
        verdict, products, residuals = cone_membership(cone, coeffs)
    assert len(cone.rays) == 12
    assert splits == Counter({2: 9, 3: 3})
    assert verdict is Membership.INTERIOR
    assert Counter(products) == Counter({Fraction(4): 6, Fraction(8, 3): 3, Fraction(4, 3): 3})
    assert all(r == 0 for r in residuals)


@criterion(7, "quartic: degree 4, genus 3, edge lengths, skeleton moduli")
def test_quartic_curve():
    with Budget(60):
        f = load_fixture("quartic_curve.json", "polynomial")
        h = hypersurface(f)
        lengths = Counter(l for _, l in curve_edge_lengths(h))
        sk = skeleton(h)
    assert f.degree() == 4 and genus(h) == 3
    assert lengths == Counter({INF: 12, Fraction(1): 9, Fraction(1, 3): 6, Fraction(2, 3): 3})
    assert len(sk.nodes) == 4 and len(sk.edges) == 6
    assert Counter(l for *_, l in sk.edges) == Counter({Fraction(4, 3): 3, Fraction(1, 3): 3})


@criterion(8, "tight span of the Plucker point: faces of sizes 2,2,4; 6 matroidal cells")
def test_tight_span():
    with Budget(30):
        vm = load_fixture("plucker_3_6.json", "valuated_matroid")
        ts = tight_span(vm.subdivision)
    assert sorted(len(c) for c in ts.cells) == [2, 2, 4]
    # same shape as {0 4}, {1 5}, {1 2 3 4}: two edges hanging off distinct
    # vertices of a square
    square = next(c for c in ts.cells if len(c) == 4)
    edges = [c for c in ts.cells if len(c) == 2]
    assert [len(e & square) for e in edges] == [1, 1]
    assert len({next(iter(e & square)) for e in edges}) == 2
    assert len(set().union(*ts.cells)) == 6
    assert vm.subdivision.n_maximal_cells == 6
    assert all(check_basis_exchange_axiom(vm.cell_matroid(c).bases) for c in vm.subdivision.maximal_cells)


@criterion(9, "Fano Bergman fans: 21 cones each, supports coincide")
def test_bergman_fans():
    with Budget(60):
        fano = fano_matroid()
        flats = bergman_fan_from_flats(fano)
        ls = linear_space(trivial_valuation(fano)).cycle
    assert len(flats.cells) == 21 and len(ls.cells) == 21
    assert all(ls.contains(c.relative_interior_point()) for c in flats.cells)
    assert all(flats.contains(c.relative_interior_point()) for c in ls.cells)
    for c in flats.cells:
        for r in c.rays:
            assert ls.contains(r)


@criterion(10, "linear space bounded complex: 6 vertices, 6 edges, 1 square")
def test_linear_space():
    with Budget(30):
        ls = linear_space(load_fixture("plucker_3_6.json", "valuated_matroid")).cycle
        bc = bounded_complex(ls)
    dims = Counter(bc.cell_dim(i) for i in range(len(bc.cells)))
    assert dims == Counter({0: 6, 1: 6, 2: 1})
    square = next(i for i in range(len(bc.cells)) if bc.cell_dim(i) == 2)
    assert len(bc.polyhedron(square).points) == 4
    # two antennas: the edges not on the square
    on_square = set(bc.cells[square])
    antennas = [i for i in range(len(bc.cells)) if bc.cell_dim(i) == 1 and not bc.cells[i] <= on_square]
    assert len(antennas) == 2


@criterion(11, "V.V.V has degree 27; Bernstein for delta = 1, 2")
def test_triple_self_intersection(cubic):
    with Budget(600):
        v = cubic.cycle
        vvv = stable_intersection(stable_intersection(v, v), v)
    assert vvv.dim == 0 and vvv.total_weight() == 27
    assert normalized_volume([(0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3)]) == 27


@criterion(11, "V.V.V has degree 27; Bernstein for delta = 1, 2")
@pytest.mark.parametrize("delta", [1, 2])
def test_bernstein(delta):
    mons = [e for e in itertools.product(range(delta + 1), repeat=4) if sum(e) == delta]
    rng = random.Random(delta)
    h = hypersurface(TropicalPolynomial.from_lists(mons, [7 * sum(x * x for x in e) + rng.randint(-3, 3) for e in mons]))
    with Budget(600):
        hhh = stable_intersection(stable_intersection(h.cycle, h.cycle), h.cycle)
    simplex = [(0, 0, 0), (delta, 0, 0), (0, delta, 0), (0, 0, delta)]
    assert hhh.total_weight() == normalized_volume(simplex) == delta**3


@criterion(12, "Tutte of U(1,2)+U(1,2); deletion-contraction vs corank-nullity on 50 matroids")
def test_tutte():
    assert str(tutte_polynomial(direct_sum(uniform_matroid(1, 2), uniform_matroid(1, 2)))) == "x^2 + 2*x*y + y^2"
    rng = random.Random(12)
    with Budget(30):
        ms = [random_matroid(rng, 7) for _ in range(50)]
        for m in ms:
            assert tutte_polynomial(m) == tutte_corank_nullity(m)
    assert max(m.n for m in ms) == 7


# -- criterion 13: property suites at their stated sizes ---------------------------------


def _rand_extended(rng):
    if rng.random() < 0.15:
        return MinNumber(INF)
    return MinNumber(Fraction(rng.randint(-50, 50), rng.randint(1, 12)))


@criterion(13, "property suites: semiring, balancing, displacement, pointwise argmin")
def test_semiring_laws_1000_cases():
    rng = random.Random(13)
    for _ in range(1000):
        a, b, c = (_rand_extended(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + MinNumber.zero() == a and a * MinNumber.one() == a


def _constructed_hypersurfaces():
    yield parse_tropical_polynomial("min(x0,x1,x2)")
    yield parse_tropical_polynomial("min(2*x0,x0+x1+1,2*x1,x0+x2+1,x1+x2+1,2*x2)")
    yield load_fixture("quartic_curve.json", "polynomial")
    yield parse_tropical_polynomial(fixture_path("cubic_surface.txt").read_text())
    rng = random.Random(131)
    for n_vars, d in [(3, 3), (3, 4), (4, 2), (3, 2), (4, 1)]:
        mons = [e for e in itertools.product(range(d + 1), repeat=n_vars) if sum(e) == d]
        yield TropicalPolynomial.from_lists(mons, [rng.randint(-9, 9) for _ in mons])
    for _ in range(5):
        terms = {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-5, 5) for _ in range(6)}
        if len(terms) > 1:
            yield TropicalPolynomial(2, terms)


def _constructed_linear_spaces():
    yield load_fixture("plucker_3_6.json", "valuated_matroid")
    yield trivial_valuation(fano_matroid())
    yield trivial_valuation(uniform_matroid(2, 4))
    yield trivial_valuation(uniform_matroid(3, 5))
    rng = random.Random(132)
    for k, n in [(2, 4), (2, 5), (3, 5), (3, 6)]:
        rows = [[rng.randint(0, 9) for _ in range(n)] for _ in range(k)]
        vals = [
            min(sum(rows[i][p[i]] for i in range(k)) for p in itertools.permutations(s))
            for s in itertools.combinations(range(n), k)
        ]
        yield ValuatedMatroid(uniform_matroid(k, n), vals)


@criterion(13, "property suites: semiring, balancing, displacement, pointwise argmin")
def test_all_constructed_cycles_balance():
    for f in _constructed_hypersurfaces():
        assert is_balanced(hypersurface(f).cycle), str(f)
    for vm in _constructed_linear_spaces():
        assert is_balanced(linear_space(vm).cycle)


@criterion(13, "property suites: semiring, balancing, displacement, pointwise argmin")
def test_displacement_independence_five_seeds(cubic, quartic):
    v = cubic.cycle
    results = [stable_intersection(v, v, seed=s) for s in range(5)]
    assert all(r == results[0] for r in results[1:])
    line = hypersurface(parse_tropical_polynomial("min(x0+1,x1-2,x2)")).cycle
    results = [stable_intersection(quartic.cycle, line, seed=s) for s in range(5)]
    assert all(r == results[0] for r in results[1:])
    assert results[0].total_weight() == 4


@criterion(13, "property suites: semiring, balancing, displacement, pointwise argmin")
def test_pointwise_argmin_1000_points(quartic):
    sub = quartic.dual_subdivision
    cfg, h = sub.config, sub.heights
    cells = [set(c) for c in sub.maximal_cells]
    rng = random.Random(14)
    for _ in range(1000):
        p = (Fraction(rng.randint(-400, 400), rng.randint(1, 40)), Fraction(rng.randint(-400, 400), rng.randint(1, 40)))
        vals = [hi + pt[0] * p[0] + pt[1] * p[1] for pt, hi in zip(cfg.points, h)]
        m = min(vals)
        arg = {i for i, x in enumerate(vals) if x == m}
        assert any(arg <= c for c in cells)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
