"""Valuated matroids, tropical linear spaces and Bergman fans.

Sign convention: the cell of the linear space containing x is dual to the
bases minimising v(B) - sum_{i in B} x_i, i.e. v(B) + sum_{i not in B} x_i up
to a constant. With this choice the Bergman fan of a matroid has the
positive indicator vectors e_F of flats as rays, matching hypersurfaces of
Min polynomials (the tropical hyperplane min(x_0, ..., x_n) has rays +e_i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cycles import TropicalCycle
from .geometry.polyhedron import Polyhedron
from .geometry.subdivision import (
    PointConfiguration,
    RegularSubdivision,
    dual_cell,
    regular_subdivision,
    subdivision_faces,
)
from .matroids import (
    Matroid,
    check_basis_exchange_axiom,
    is_loopfree,
    lattice_of_flats,
    matroid_polytope,
    uniform_matroid,
)
from .rational import to_rational


class NotMatroidal(ValueError):
    pass


def _cell_bases(m: Matroid, cell) -> list[frozenset[int]]:
    return [m.bases[i] for i in cell]


def is_matroidal(sub: RegularSubdivision, m: Matroid) -> bool:
    """Every maximal cell, read as a set of bases of ``m``, is a matroid."""
    if len(sub.config) != len(m.bases):
        raise ValueError("subdivision points are not labelled by the matroid's bases")
    return all(check_basis_exchange_axiom(_cell_bases(m, c)) for c in sub.maximal_cells)


@dataclass(frozen=True, eq=False)
class ValuatedMatroid:
    matroid: Matroid
    valuation: tuple[Fraction, ...]
    subdivision: RegularSubdivision = field(repr=False)

    def __init__(self, matroid: Matroid, valuation: Sequence, check: bool = True):
        val = tuple(to_rational(v) for v in valuation)
        if len(val) != len(matroid.bases):
            raise ValueError(f"need {len(matroid.bases)} values, one per basis")
        sub = regular_subdivision(matroid_polytope(matroid), val)
        object.__setattr__(self, "matroid", matroid)
        object.__setattr__(self, "valuation", val)
        object.__setattr__(self, "subdivision", sub)
        if check and not is_matroidal(sub, matroid):
            raise NotMatroidal("the valuation induces a non-matroidal subdivision")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ValuatedMatroid):
            return NotImplemented
        return self.matroid == other.matroid and self.valuation == other.valuation

    __hash__ = None

    def cell_matroid(self, face) -> Matroid:
        return Matroid(self.matroid.n, _cell_bases(self.matroid, face), check=False)


def trivial_valuation(m: Matroid) -> ValuatedMatroid:
    return ValuatedMatroid(m, [0] * len(m.bases))


@dataclass(eq=False)
class LinearSpace:
    """The tropical linear space together with the faces it is dual to."""

    valuated_matroid: ValuatedMatroid
    cycle: TropicalCycle
    dual_faces: list[frozenset[int]]  # one subdivision face per maximal cell
    loopfree_faces: list[frozenset[int]]


def _linear_space_chart(m: Matroid) -> PointConfiguration:
    # points -e_B with the last coordinate dropped (x_{n-1} fixed to 0)
    return PointConfiguration(tuple(-int(i in b) for i in range(m.n - 1)) for b in m.bases)


def linear_space(vm: ValuatedMatroid) -> LinearSpace:
    m = vm.matroid
    cfg = _linear_space_chart(m)
    faces = subdivision_faces(vm.subdivision)
    loopfree = [s for s in faces if is_loopfree(vm.cell_matroid(s))]
    minimal = [s for s in loopfree if not any(t < s for t in loopfree)]
    cells = [dual_cell(cfg, vm.valuation, s) for s in minimal]
    cycle = TropicalCycle(m.n - 1, cells, [1] * len(cells))
    return LinearSpace(vm, cycle, minimal, loopfree)


def _chart_indicator(flat: frozenset[int], n: int) -> tuple[int, ...]:
    last = int(n - 1 in flat)
    return tuple(int(i in flat) - last for i in range(n - 1))


def bergman_fan_from_flats(m: Matroid) -> TropicalCycle:
    """Cones spanned by e_F over complete chains of proper nonempty flats."""
    if not is_loopfree(m):
        raise ValueError("the Bergman fan needs a loopfree matroid")
    lat = lattice_of_flats(m)
    n = m.n
    cells = []
    for chain in lat.maximal_chains():
        rays = [_chart_indicator(f, n) for f in chain]
        cells.append(Polyhedron.cone(rays, dim=n - 1) if rays else Polyhedron(n - 1, points=[(0,) * (n - 1)]))
    return TropicalCycle(n - 1, cells, [1] * len(cells))


def standard_linear_space(d: int, n: int) -> TropicalCycle:
    """The d-dimensional Bergman fan of U(d+1, n+1) in the chart R^n."""
    return bergman_fan_from_flats(uniform_matroid(d + 1, n + 1))
