"""Recompute the published listing outputs from the bundled fixtures."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arith import MinNumber, TropicalMatrix, kleene_star, tdet
from .auctions import competitive_equilibria
from .cycles import bounded_complex, degree, stable_intersection
from .geometry.subdivision import (
    Membership,
    coarsest_subdivision_of_ray,
    cone_membership,
    dual_description,
    secondary_cone,
    tight_span,
)
from .linspace import bergman_fan_from_flats, linear_space, trivial_valuation
from .matroids import check_basis_exchange_axiom, direct_sum, fano_matroid, tutte_polynomial, uniform_matroid
from .polysurf import (
    curve_edge_lengths,
    genus,
    hypersurface,
    is_smooth,
    parse_tropical_polynomial,
    skeleton,
)
from .rational import INF
from .serialize import fixture_path, load_fixture


@dataclass
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skip"
    detail: str


def _listing1() -> str:
    a, b, c = MinNumber(3), MinNumber(5), MinNumber(8)
    got = [a * c, b * c, (a + b) * c, a * MinNumber(INF)]
    assert [str(x) for x in got] == ["11", "13", "11", "inf"], got
    return "11 13 11 inf"


def _listing2() -> str:
    a = load_fixture("shortest_paths_matrix.json", "matrix")
    i = TropicalMatrix.identity(3)
    expected = TropicalMatrix([[0, 2, 3], [1, 0, 4], [1, 0, 0]])
    assert i + a == expected and kleene_star(a) == expected and i + a + a * a == expected
    return "A* = I + A"


def _listing3() -> str:
    a = load_fixture("shortest_paths_matrix.json", "matrix")
    value, perm = tdet(a)
    assert (str(value), str(perm)) == ("4", "<0 1 2>"), (value, perm)
    return f"{value} {perm}"


def _cubic() -> str:
    f = parse_tropical_polynomial(fixture_path("cubic_surface.txt").read_text())
    v = hypersurface(f)
    cells = v.dual_subdivision.n_maximal_cells
    assert f.degree() == 3 and cells == 27 and is_smooth(v)
    return f"degree 3, {cells} maximal cells, smooth"


def _listing6() -> str:
    counts = competitive_equilibria(load_fixture("tran_yu_ex2.json", "auction"))
    expected = {(0, 0): 2, (1, 0): 1, (1, 3): 2, (0, 1): 2, (1, 1): 0, (0, 2): 2, (1, 2): 5, (2, 2): 2, (0, 3): 1}
    assert counts == expected, counts
    return "no equilibrium only at (1,1)"


def _quartic():
    f = load_fixture("quartic_curve.json", "polynomial")
    return f, hypersurface(f)


def _secondary_cone() -> str:
    sub = load_fixture("quartic_triangulation.json", "subdivision")
    cone = dual_description(secondary_cone(sub))
    counts = Counter(coarsest_subdivision_of_ray(sub.config, r).n_maximal_cells for r in cone.rays)
    f, _ = _quartic()
    verdict, products, eqs = cone_membership(cone, f.coefficients)
    assert len(cone.rays) == 12 and counts == Counter({2: 9, 3: 3})
    assert verdict is Membership.INTERIOR and not eqs
    assert Counter(products) == Counter({Fraction(4): 6, Fraction(8, 3): 3, Fraction(4, 3): 3}), products
    return "12 rays, splits 2^9 3^3, facet products 4^6 (8/3)^3 (4/3)^3"


def _quartic_curve() -> str:
    f, c = _quartic()
    lengths = Counter(l for _, l in curve_edge_lengths(c))
    sk = skeleton(c)
    assert f.degree() == 4 and genus(c) == 3
    assert lengths == Counter({INF: 12, Fraction(1): 9, Fraction(1, 3): 6, Fraction(2, 3): 3}), lengths
    assert len(sk.nodes) == 4 and len(sk.edges) == 6
    assert sorted(l for *_, l in sk.edges) == [Fraction(1, 3)] * 3 + [Fraction(4, 3)] * 3
    return "degree 4, genus 3, moduli 4/3 x3 and 1/3 x3"


def _tight_span() -> str:
    vm = load_fixture("plucker_3_6.json", "valuated_matroid")
    sub = vm.subdivision
    ts = tight_span(sub)
    assert sorted(len(c) for c in ts.cells) == [2, 2, 4]
    assert sub.n_maximal_cells == 6
    assert all(check_basis_exchange_axiom(vm.cell_matroid(c).bases) for c in sub.maximal_cells)
    return "tight span faces of sizes 2 2 4; 6 matroidal cells"


def _bergman() -> str:
    fano = fano_matroid()
    flats = bergman_fan_from_flats(fano)
    ls = linear_space(trivial_valuation(fano)).cycle
    assert len(flats.cells) == 21 and len(ls.cells) == 21
    for c in flats.cells:
        assert ls.contains(c.relative_interior_point())
    for c in ls.cells:
        assert flats.contains(c.relative_interior_point())
    return "21 maximal cones in both fans"


def _linear_space() -> str:
    ls = linear_space(load_fixture("plucker_3_6.json", "valuated_matroid")).cycle
    bc = bounded_complex(ls)
    dims = Counter(bc.cell_dim(i) for i in range(len(bc.cells)))
    assert dims == Counter({0: 6, 1: 6, 2: 1}), dims
    return "6 vertices, 6 edges, 1 square"


def _self_intersection() -> str:
    v = hypersurface(parse_tropical_polynomial(fixture_path("cubic_surface.txt").read_text())).cycle
    vvv = stable_intersection(stable_intersection(v, v), v)
    assert vvv.total_weight() == 27 and degree(v) == 3
    return "V.V.V has degree 27"


def _tutte() -> str:
    u = uniform_matroid(1, 2)
    t = tutte_polynomial(direct_sum(u, u))
    assert str(t) == "x^2 + 2*x*y + y^2", str(t)
    return str(t)


CHECKS: dict[str, Callable[[], str]] = {
    "listing1": _listing1,
    "listing2": _listing2,
    "listing3": _listing3,
    "cubic": _cubic,
    "listing6": _listing6,
    "secondary-cone": _secondary_cone,
    "quartic": _quartic_curve,
    "tight-span": _tight_span,
    "bergman": _bergman,
    "linear-space": _linear_space,
    "self-intersection": _self_intersection,
    "tutte": _tutte,
}


def run_checks(only: list[str] | None = None) -> list[CheckResult]:
    names = only or list(CHECKS)
    out = []
    for name in names:
        if name not in CHECKS:
            out.append(CheckResult(name, "skip", "unknown check"))
            continue
        try:
            out.append(CheckResult(name, "pass", CHECKS[name]()))
        except FileNotFoundError as e:
            out.append(CheckResult(name, "skip", f"missing fixture: {e.filename}"))
        except AssertionError as e:
            out.append(CheckResult(name, "fail", str(e) or "mismatch"))
    return out
