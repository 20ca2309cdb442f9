"""Rational polyhedra with lazily completed double description.

A polyhedron in R^d is stored in homogeneous coordinates: an inequality
``(b, a_1, ..., a_d)`` means ``b + a.x >= 0``; the V-side is a list of
points, rays and a lineality basis. Points are canonical: they are projected
onto the orthogonal complement of the lineality space.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .dd import cone_facets, cone_generators
from .linalg import dot, integerize, primitive, project_out, rank, rref

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]


def _canonical_lineality(lin: Sequence[Sequence]) -> tuple[IntVec, ...]:
    red, _ = rref(lin)
    return tuple(integerize(r) for r in red)


class Polyhedron:
    """A rational polyhedron; give either an H- or a V-description.

    A V-description is kept as given, so ``points`` may include non-vertices
    (subdivision code relies on this to see every labelled point of a cell).
    Polyhedra built from inequalities list vertices and extreme rays only.
    """

    def __init__(
        self,
        dim: int,
        *,
        points: Iterable[Sequence] | None = None,
        rays: Iterable[Sequence] = (),
        lineality: Iterable[Sequence] = (),
        inequalities: Iterable[Sequence] | None = None,
        equations: Iterable[Sequence] = (),
    ):
        self.dim = dim
        if points is not None:
            self._set_v(list(points), list(rays), list(lineality))
            self._h = None
        elif inequalities is not None:
            self._h = (
                [integerize(a) for a in inequalities],
                [integerize(b) for b in equations],
            )
            self._v = None
        else:
            raise ValueError("need points or inequalities")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_points(cls, points, rays=(), lineality=()) -> Polyhedron:
        points = list(points)
        dim = len(points[0]) if points else len(next(iter(rays)))
        return cls(dim, points=points, rays=rays, lineality=lineality)

    @classmethod
    def cone(cls, rays, lineality=(), dim: int | None = None) -> Polyhedron:
        rays = list(rays)
        lineality = list(lineality)
        if dim is None:
            dim = len((rays or lineality)[0])
        return cls(dim, points=[(0,) * dim], rays=rays, lineality=lineality)

    def _set_v(self, points, rays, lineality):
        lin = _canonical_lineality(lineality) if lineality else ()
        pts = {project_out(p, lin) for p in points}
        rs = set()
        for r in rays:
            r = integerize(project_out(r, lin)) if lin else integerize(r)
            if any(r):
                rs.add(r)
        self._v = (sorted(pts), sorted(rs), lin)

    def _compute_v(self):
        ineqs, eqs = self._h
        far = (1,) + (0,) * self.dim
        gens, lin = cone_generators(list(ineqs) + [far], list(eqs), self.dim + 1)
        pts, rays = [], []
        for g in gens:
            if g[0] > 0:
                pts.append(tuple(Fraction(x, g[0]) for x in g[1:]))
            else:
                rays.append(g[1:])
        self._set_v(pts, rays, [l[1:] for l in lin])

    def _compute_h(self):
        pts, rays, lin = self._v
        d = self.dim
        if not pts:
            # empty polyhedron: 0 >= 1 style contradiction
            self._h = ([(-1,) + (0,) * d], [])
            return
        gens = [integerize((Fraction(1),) + tuple(p)) for p in pts]
        gens += [(0,) + tuple(r) for r in rays]
        hlin = [(0,) + tuple(l) for l in lin]
        facets, eqs = cone_facets(gens, hlin, d + 1)
        # drop the face at infinity (valid inequality tight at no point)
        keep = []
        for f in facets:
            if any(dot(f, g) == 0 for g in gens[: len(pts)]):
                keep.append(f)
        self._h = (keep, eqs)
        self._h_irredundant = True

    # -- descriptions ----------------------------------------------------------

    @property
    def points(self) -> list[RatVec]:
        if self._v is None:
            self._compute_v()
        return self._v[0]

    @property
    def rays(self) -> list[IntVec]:
        if self._v is None:
            self._compute_v()
        return self._v[1]

    @property
    def lineality(self) -> tuple[IntVec, ...]:
        if self._v is None:
            self._compute_v()
        return self._v[2]

    @property
    def facets(self) -> list[IntVec]:
        """Irredundant facet inequalities (homogeneous, ``f[0] + f[1:].x >= 0``)."""
        if not getattr(self, "_h_irredundant", False):
            self.points
            self._compute_h()
        return self._h[0]

    @property
    def equations(self) -> list[IntVec]:
        if not getattr(self, "_h_irredundant", False):
            self.points
            self._compute_h()
        return self._h[1]

    def _raw_h(self):
        if self._h is None:
            self._compute_h()
        return self._h

    # -- basic queries ----------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.points

    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    @cached_property
    def directions(self) -> list[RatVec]:
        """Vectors spanning the linear space parallel to the affine hull."""
        pts = self.points
        out = [tuple(x - y for x, y in zip(p, pts[0])) for p in pts[1:]]
        out += [tuple(Fraction(x) for x in r) for r in self.rays]
        out += [tuple(Fraction(x) for x in l) for l in self.lineality]
        return [v for v in out if any(v)]

    @cached_property
    def affine_dim(self) -> int:
        if self.is_empty():
            return -1
        return rank(self.directions) if self.directions else 0

    def value(self, ineq: Sequence, x: Sequence):
        return ineq[0] + dot(ineq[1:], x)

    def contains(self, x: Sequence) -> bool:
        ineqs, eqs = self._raw_h()
        return all(self.value(e, x) == 0 for e in eqs) and all(self.value(f, x) >= 0 for f in ineqs)

    def in_relative_interior(self, x: Sequence) -> bool:
        return all(self.value(e, x) == 0 for e in self.equations) and all(
            self.value(f, x) > 0 for f in self.facets
        )

    def relative_interior_point(self) -> RatVec:
        pts = self.points
        n = len(pts)
        c = [sum(p[i] for p in pts) / n for i in range(self.dim)]
        for r in self.rays:
            c = [a + b for a, b in zip(c, r)]
        return tuple(c)

    def intersection(self, other: Polyhedron) -> Polyhedron:
        a, b = self._raw_h(), other._raw_h()
        return Polyhedron(self.dim, inequalities=a[0] + b[0], equations=a[1] + b[1])

    def tangent_cone(self, x: Sequence) -> Polyhedron:
        """cone(P - x) for a point x of P, as a cone at the origin."""
        ineqs = [(0,) + tuple(f[1:]) for f in self.facets if self.value(f, x) == 0]
        eqs = [(0,) + tuple(e[1:]) for e in self.equations]
        return Polyhedron(self.dim, inequalities=ineqs, equations=eqs)

    def key(self) -> tuple:
        """Hashable canonical form of the V-description."""
        return (tuple(self.points), tuple(self.rays), tuple(self.lineality))

    # -- faces -------------------------------------------------------------------

    def face_incidences(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        """All nonempty faces as (point indices, ray indices), including P itself."""
        pts, rays = self.points, self.rays
        if not pts:
            return []
        sets = []
        for f in self.facets:
            vp = frozenset(i for i, p in enumerate(pts) if self.value(f, p) == 0)
            vr = frozenset(i for i, r in enumerate(rays) if dot(f[1:], r) == 0)
            sets.append((vp, vr))
        top = (frozenset(range(len(pts))), frozenset(range(len(rays))))
        faces = {top}
        frontier = {s for s in sets if s[0]}
        faces |= frontier
        while frontier:
            new = set()
            for a in frontier:
                for b in sets:
                    c = (a[0] & b[0], a[1] & b[1])
                    if c[0] and c not in faces:
                        new.add(c)
            faces |= new
            frontier = new
        return sorted(faces, key=lambda s: (len(s[0]) + len(s[1]), sorted(s[0]), sorted(s[1])))

    def face(self, inc: tuple[frozenset[int], frozenset[int]]) -> Polyhedron:
        pts, rays = self.points, self.rays
        return Polyhedron(
            self.dim,
            points=[pts[i] for i in sorted(inc[0])],
            rays=[rays[i] for i in sorted(inc[1])],
            lineality=self.lineality,
        )

    def faces(self, dim: int | None = None) -> list[Polyhedron]:
        out = []
        for inc in self.face_incidences():
            f = self.face(inc)
            if dim is None or f.affine_dim == dim:
                out.append(f)
        return out

    def __repr__(self) -> str:
        if self._v is not None:
            return f"Polyhedron(dim={self.dim}, points={len(self.points)}, rays={len(self.rays)}, lin={len(self.lineality)})"
        return f"Polyhedron(dim={self.dim}, H: {len(self._h[0])} ineqs, {len(self._h[1])} eqs)"


def conv(points: Iterable[Sequence]) -> Polyhedron:
    return Polyhedron.from_points(points)


def primitive_int(v: Sequence[int]) -> IntVec:
    return primitive(tuple(v))
