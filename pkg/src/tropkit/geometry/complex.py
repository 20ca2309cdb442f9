"""Polyhedral complexes with globally indexed vertices and rays.

Vertices are homogeneous rows: a leading 1 marks an ordinary point, a
leading 0 a ray ("far vertex"). Cells are sets of row indices; a lineality
space, if any, is shared by every cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import rank
from .polyhedron import Polyhedron


@dataclass(eq=False)
class PolyhedralComplex:
    ambient_dim: int
    vertices: list[tuple[Fraction, ...]]
    cells: list[frozenset[int]]
    lineality: tuple[tuple[int, ...], ...] = ()
    _poly_cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_polyhedra(cls, polys: Iterable[Polyhedron], ambient_dim: int | None = None) -> PolyhedralComplex:
        polys = list(polys)
        if ambient_dim is None:
            ambient_dim = polys[0].dim
        index: dict[tuple, int] = {}
        rows: list[tuple[Fraction, ...]] = []
        cells = []
        lin: tuple = ()

        def idx(row):
            if row not in index:
                index[row] = len(rows)
                rows.append(row)
            return index[row]

        for p in polys:
            lin = lin or p.lineality
            ids = [idx((Fraction(1),) + tuple(Fraction(x) for x in v)) for v in p.points]
            ids += [idx((Fraction(0),) + tuple(Fraction(x) for x in r)) for r in p.rays]
            cells.append(frozenset(ids))
        return cls(ambient_dim, rows, cells, tuple(lin))

    def far_vertices(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.vertices) if v[0] == 0)

    def polyhedron(self, i: int) -> Polyhedron:
        if i not in self._poly_cache:
            pts, rays = [], []
            for j in sorted(self.cells[i]):
                row = self.vertices[j]
                (pts if row[0] != 0 else rays).append(row[1:])
            self._poly_cache[i] = Polyhedron(self.ambient_dim, points=pts, rays=rays, lineality=self.lineality)
        return self._poly_cache[i]

    def cell_dim(self, i: int) -> int:
        return self.polyhedron(i).affine_dim

    def dims(self) -> list[int]:
        return [self.cell_dim(i) for i in range(len(self.cells))]

    def is_pure(self) -> bool:
        return len(set(self.dims())) <= 1

    @property
    def dim(self) -> int:
        return max(self.dims(), default=-1)

    def maximal_cells(self) -> list[int]:
        """Indices of cells not strictly contained in another cell."""
        out = []
        for i, c in enumerate(self.cells):
            if not any(i != j and c < d for j, d in enumerate(self.cells)):
                out.append(i)
        return out

    def bounded_cells(self) -> list[int]:
        far = self.far_vertices()
        return [i for i, c in enumerate(self.cells) if not (c & far) and not self.lineality]

    def contains_point(self, x: Sequence) -> bool:
        return any(self.polyhedron(i).contains(x) for i in range(len(self.cells)))

    def subcomplex(self, cells: Sequence[int]) -> PolyhedralComplex:
        return PolyhedralComplex(self.ambient_dim, list(self.vertices), [self.cells[i] for i in cells], self.lineality)

    def all_faces(self) -> list[frozenset[int]]:
        """Every nonempty face of every cell, as global vertex index sets."""
        seen: set[frozenset[int]] = set()
        for i, c in enumerate(self.cells):
            p = self.polyhedron(i)
            loc = self._local_to_global(i)
            for pts, rays in p.face_incidences():
                seen.add(frozenset(loc[0][k] for k in pts) | frozenset(loc[1][k] for k in rays))
        return sorted(seen, key=lambda s: (len(s), sorted(s)))

    def _local_to_global(self, i: int):
        p = self.polyhedron(i)
        where = {v: j for j, v in enumerate(self.vertices)}
        pts = [where[(Fraction(1),) + tuple(v)] for v in p.points]
        rays = [where[(Fraction(0),) + tuple(Fraction(x) for x in r)] for r in p.rays]
        return pts, rays

    def face_rank(self, face: frozenset[int]) -> int:
        rows = [self.vertices[j] for j in face]
        rows += [(Fraction(0),) + tuple(Fraction(x) for x in l) for l in self.lineality]
        return rank(rows) - 1
