"""Point configurations, regular subdivisions, secondary cones and normal complexes.

Everything follows the Min convention: a height vector ``h`` induces the
subdivision whose cells are the lower faces of the lifted points
``(p_i, h_i)``, and the normal complex consists of the regions of
``argmin_i h_i + p_i . x``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..rational import to_rational
from .complex import PolyhedralComplex
from .dd import cone_facets, cone_generators
from .linalg import (
    det,
    dot,
    index_in_saturation,
    integerize,
    project_out,
    rank,
    rref,
    solve,
)
from .polyhedron import Polyhedron


class InvalidSubdivision(ValueError):
    pass


@dataclass(frozen=True)
class PointConfiguration:
    points: tuple[tuple[Fraction, ...], ...]

    def __init__(self, points: Iterable[Sequence]):
        pts = tuple(tuple(to_rational(x) for x in p) for p in points)
        if not pts:
            raise ValueError("a point configuration needs at least one point")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("all points must have the same length")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    @property
    def affine_dim(self) -> int:
        p0 = self.points[0]
        return rank([tuple(a - b for a, b in zip(p, p0)) for p in self.points[1:]]) if len(self) > 1 else 0

    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for p in self.points for x in p)

    def chart(self) -> tuple[PointConfiguration, list[int]]:
        """Coordinate projection that is injective on the affine hull.

        Keeps the pivot coordinates of the difference vectors; for points
        with constant coordinate sum this drops the last coordinate.
        """
        p0 = self.points[0]
        diffs = [tuple(a - b for a, b in zip(p, p0)) for p in self.points[1:]]
        _, piv = rref(diffs) if diffs else ([], [])
        return PointConfiguration(tuple(p[i] for i in piv) for p in self.points), piv


@dataclass(frozen=True)
class RegularSubdivision:
    config: PointConfiguration
    heights: tuple[Fraction, ...] | None
    maximal_cells: tuple[tuple[int, ...], ...]

    @property
    def n_maximal_cells(self) -> int:
        return len(self.maximal_cells)

    def cells_containing(self, i: int) -> list[int]:
        return [k for k, c in enumerate(self.maximal_cells) if i in c]

    def faces(self) -> list[frozenset[int]]:
        return subdivision_faces(self)

    def validate(self) -> None:
        """Check full-dimensional cells, volume coverage and proper intersections."""
        cfg = self.config
        d = cfg.affine_dim
        for c in self.maximal_cells:
            if not c or max(c) >= len(cfg) or min(c) < 0:
                raise InvalidSubdivision(f"cell {c} has invalid point indices")
            if PointConfiguration(cfg.points[i] for i in c).affine_dim != d:
                raise InvalidSubdivision(f"cell {c} is not full-dimensional")
        if cfg.is_lattice():
            total = normalized_volume(cfg.points)
            covered = sum(normalized_volume([cfg.points[i] for i in c]) for c in self.maximal_cells)
            if total != covered:
                raise InvalidSubdivision(f"cells cover volume {covered}, expected {total}")
        polys = [Polyhedron.from_points([cfg.points[i] for i in c]) for c in self.maximal_cells]
        for a, b in itertools.combinations(range(len(polys)), 2):
            q = polys[a].intersection(polys[b])
            if q.is_empty():
                continue
            if q.affine_dim == d:
                raise InvalidSubdivision(f"cells {a} and {b} overlap")
            common = set(self.maximal_cells[a]) & set(self.maximal_cells[b])
            if {tuple(p) for p in q.points} - {cfg.points[i] for i in common}:
                raise InvalidSubdivision(f"cells {a} and {b} do not meet in a common face")


def _lifted_generators(cfg: PointConfiguration, heights: Sequence[Fraction]) -> list[tuple[int, ...]]:
    return [integerize((Fraction(1),) + p + (h,)) for p, h in zip(cfg.points, heights)]


def regular_subdivision(config: PointConfiguration, heights: Sequence) -> RegularSubdivision:
    """Cells are the point sets on the lower facets of the lifted configuration."""
    heights = tuple(to_rational(h) for h in heights)
    if len(heights) != len(config):
        raise ValueError("need one height per point")
    gens = _lifted_generators(config, heights)
    up = (0,) * (config.dim + 1) + (1,)
    facets, _ = cone_facets(gens + [up], [], config.dim + 2)
    cells = set()
    for f in facets:
        if f[-1] > 0:
            cells.add(tuple(i for i, g in enumerate(gens) if dot(f, g) == 0))
    if not cells:
        cells.add(tuple(range(len(config))))
    return RegularSubdivision(config, heights, tuple(sorted(cells)))


def subdivision_from_cells(config: PointConfiguration, cells: Iterable[Iterable[int]], check: bool = True) -> RegularSubdivision:
    sub = RegularSubdivision(config, None, tuple(sorted(tuple(sorted(c)) for c in cells)))
    if check:
        sub.validate()
    return sub


def point_set_faces(points: dict[int, tuple]) -> list[frozenset[int]]:
    """Faces of conv(points) as sets of point labels (non-vertices included)."""
    labels = sorted(points)
    poly = Polyhedron.from_points([points[i] for i in labels])
    full = frozenset(labels)
    sets = []
    for f in poly.facets:
        s = frozenset(i for i in labels if poly.value(f, points[i]) == 0)
        if s:
            sets.append(s)
    faces = {full}
    frontier = set(sets)
    faces |= frontier
    while frontier:
        new = set()
        for a in frontier:
            for b in sets:
                c = a & b
                if c and c not in faces:
                    new.add(c)
        faces |= new
        frontier = new
    return sorted(faces, key=lambda s: (len(s), sorted(s)))


def subdivision_faces(sub: RegularSubdivision) -> list[frozenset[int]]:
    pts = sub.config.points
    out: set[frozenset[int]] = set()
    for c in sub.maximal_cells:
        out.update(point_set_faces({i: pts[i] for i in c}))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------------------
# volumes


def _simplex_volume(vertices: Sequence[Sequence[Fraction]]) -> int:
    v0 = vertices[0]
    diffs = [tuple(int(a - b) for a, b in zip(v, v0)) for v in vertices[1:]]
    if not diffs:
        return 1
    return index_in_saturation(diffs, len(v0))


def _pulling_triangulation(poly: Polyhedron) -> list[list[tuple]]:
    verts = poly.points
    if len(verts) == poly.affine_dim + 1:
        return [list(verts)]
    v0 = verts[0]
    out = []
    for f in poly.facets:
        if poly.value(f, v0) == 0:
            continue
        facet = Polyhedron.from_points([v for v in verts if poly.value(f, v) == 0])
        for simplex in _pulling_triangulation(facet):
            out.append([v0] + simplex)
    return out


def normalized_volume(points: Iterable[Sequence]) -> int:
    """Normalized lattice volume in the lattice of the affine hull.

    A unimodular simplex has volume 1; 3 times the standard 3-simplex has 27.
    """
    pts = [tuple(to_rational(x) for x in p) for p in points]
    if any(x.denominator != 1 for p in pts for x in p):
        raise ValueError("normalized volume needs lattice points")
    poly = Polyhedron.from_points(pts)
    return sum(_simplex_volume(s) for s in _pulling_triangulation(poly))


def is_unimodular(sub: RegularSubdivision) -> bool:
    cfg = sub.config
    d = cfg.affine_dim
    for c in sub.maximal_cells:
        if len(c) != d + 1:
            return False
        if normalized_volume([cfg.points[i] for i in c]) != 1:
            return False
    return True


def hypersimplex(k: int, n: int) -> PointConfiguration:
    """0/1 vectors with k ones, in lexicographic order of their supports.

    This order also indexes Plücker vectors and valuations on U(k, n).
    """
    if not 0 < k <= n:
        raise ValueError(f"invalid hypersimplex parameters ({k}, {n})")
    return PointConfiguration(
        tuple(1 if i in s else 0 for i in range(n)) for s in itertools.combinations(range(n), k)
    )


# ---------------------------------------------------------------------------
# cones


class Membership(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass
class Cone:
    """Polyhedral cone {x : F x >= 0, E x = 0} = cone(rays) + span(lineality)."""

    ambient_dim: int
    rays: list[tuple[int, ...]] | None = None
    lineality: list[tuple[int, ...]] | None = None
    facets: list[tuple[int, ...]] | None = None
    equations: list[tuple[int, ...]] | None = None

    @property
    def n_rays(self) -> int:
        return len(dual_description(self).rays)


def _canonical(vectors, modulo) -> list[tuple[int, ...]]:
    basis = [tuple(r) for r in rref(modulo)[0]] if modulo else []
    out = set()
    for v in vectors:
        w = integerize(project_out(v, basis)) if basis else integerize(v)
        if any(w):
            out.add(w)
    return sorted(out)


def dual_description(cone: Cone) -> Cone:
    """Complete whichever description of the cone is missing, canonically.

    Rays and facet normals are reduced modulo the lineality space and the
    equations respectively, and sorted. Rays are primitive integer vectors.
    A facet normal keeps the positive scale of the given inequality it comes
    from, if any; facets found only by the completion are primitive.
    """
    n = cone.ambient_dim
    if cone.facets is None and cone.rays is None:
        raise ValueError("cone has neither rays nor facets")
    if cone.rays is None:
        rays, lin = cone_generators([integerize(f) for f in cone.facets], [integerize(e) for e in cone.equations or []], n)
    else:
        rays, lin = [integerize(r) for r in cone.rays], [integerize(r) for r in cone.lineality or []]
    lin_basis = [integerize(r) for r in rref(lin)[0]] if lin else []
    rays = _canonical(rays, lin_basis)
    facets, eqs = cone_facets(rays, lin_basis, n)
    eq_basis = [integerize(r) for r in rref(eqs)[0]] if eqs else []
    facets = _canonical(facets, eq_basis)
    if cone.rays is not None:
        # drop redundant generators: an extreme ray is cut out by facets up to a line
        need = n - len(lin_basis) - 1
        rays = [r for r in rays if rank(eq_basis + [f for f in facets if dot(f, r) == 0]) == need]
    if cone.facets:
        given = {}
        for g in cone.facets:
            v = project_out(g, eq_basis) if eq_basis else tuple(Fraction(x) for x in g)
            if any(v):
                given.setdefault(integerize(v), v)
        facets = [given.get(f, f) for f in facets]
    return Cone(n, rays, lin_basis, facets, eq_basis)


def cone_membership(cone: Cone, v: Sequence) -> tuple[Membership, list[Fraction], list[Fraction]]:
    """Classify v and return (verdict, facet products, equation products)."""
    cone = dual_description(cone) if cone.facets is None or cone.equations is None else cone
    v = tuple(to_rational(x) for x in v)
    if len(v) != cone.ambient_dim:
        raise ValueError(f"vector has length {len(v)}, cone lives in dimension {cone.ambient_dim}")
    fp = [Fraction(dot(f, v)) for f in cone.facets]
    ep = [Fraction(dot(e, v)) for e in cone.equations]
    if any(e != 0 for e in ep) or any(x < 0 for x in fp):
        verdict = Membership.OUTSIDE
    elif all(x > 0 for x in fp):
        verdict = Membership.INTERIOR
    else:
        verdict = Membership.BOUNDARY
    return verdict, fp, ep


def _affine_basis(pts: Sequence[tuple], cell: Sequence[int]) -> list[int]:
    basis: list[int] = []
    rows: list[tuple] = []
    for i in cell:
        cand = rows + [(Fraction(1),) + pts[i]]
        if rank(cand) > len(rows):
            basis.append(i)
            rows = cand
    return basis


def _barycentric(pts, basis, x) -> tuple[Fraction, ...]:
    cols = [(Fraction(1),) + pts[b] for b in basis]
    a = [[c[r] for c in cols] for r in range(len(cols[0]))]
    lam = solve(a, (Fraction(1),) + tuple(x))
    if lam is None:
        raise InvalidSubdivision("point outside the affine hull of its cell")
    return lam


def _height_functional(n, pts, basis, j) -> tuple[Fraction, ...]:
    """Coefficients of h_j - phi(p_j), phi the affine interpolation on ``basis``."""
    row = [Fraction(0)] * n
    row[j] += 1
    for b, l in zip(basis, _barycentric(pts, basis, pts[j])):
        row[b] -= l
    return tuple(row)


def secondary_cone(sub: RegularSubdivision) -> Cone:
    """Closure of the set of height functions inducing ``sub``.

    One folding inequality per interior codimension-one face, equations for
    points that must stay coplanar with their cell, and one inequality for
    each point that lies in no cell.
    """
    cfg = sub.config
    pts = cfg.points
    n = len(cfg)
    bases = [_affine_basis(pts, c) for c in sub.maximal_cells]
    eqs = []
    for c, b in zip(sub.maximal_cells, bases):
        for i in c:
            if i not in b:
                eqs.append(_height_functional(n, pts, b, i))

    facet_owner: dict[frozenset, list[int]] = {}
    for k, c in enumerate(sub.maximal_cells):
        poly = Polyhedron.from_points([pts[i] for i in c])
        for f in poly.facets:
            verts = frozenset(i for i in c if pts[i] in poly.points and poly.value(f, pts[i]) == 0)
            facet_owner.setdefault(verts, []).append(k)
    hom = _homogeneous_coordinates(cfg)
    ineqs, scales = [], []
    for verts, owners in facet_owner.items():
        if len(owners) == 1:
            continue
        if len(owners) > 2:
            raise InvalidSubdivision("codimension-one face shared by more than two cells")
        a, b = owners
        ca, cb = sub.maximal_cells[a], sub.maximal_cells[b]
        j = next(i for i in cb if i not in ca and i not in verts)
        ineqs.append(_height_functional(n, pts, bases[a], j))
        scales.append(abs(det([hom[i] for i in bases[a]])))

    used = set().union(*map(set, sub.maximal_cells))
    for j in range(n):
        if j in used:
            continue
        for k, c in enumerate(sub.maximal_cells):
            if Polyhedron.from_points([pts[i] for i in c]).contains(pts[j]):
                ineqs.append(_height_functional(n, pts, bases[k], j))
                scales.append(abs(det([hom[i] for i in bases[k]])))
                break
    # facets keep their determinant-normalized scale through the completion
    scaled = [tuple(scale * x for x in row) for row, scale in zip(ineqs, scales)]
    return dual_description(Cone(n, facets=scaled, equations=[integerize(e) for e in eqs]))


def _homogeneous_coordinates(cfg: PointConfiguration) -> list[tuple[Fraction, ...]]:
    """Coordinates in which the points are linearly independent representatives.

    Points already on an affine hyperplane avoiding the origin are used as
    given; otherwise a leading 1 is prepended. Redundant columns are dropped.
    """
    d = cfg.affine_dim
    pts = [tuple(p) for p in cfg.points]
    if rank(pts) != d + 1:
        pts = [(Fraction(1),) + p for p in pts]
    cols: list[int] = []
    for c in range(len(pts[0])):
        if rank([[p[k] for k in cols + [c]] for p in pts]) > len(cols):
            cols.append(c)
    return [tuple(p[k] for k in cols) for p in pts]


def coarsest_subdivision_of_ray(config: PointConfiguration, ray: Sequence) -> RegularSubdivision:
    return regular_subdivision(config, ray)


# ---------------------------------------------------------------------------
# normal complexes


@dataclass(eq=False)
class NormalComplex:
    """Regions of argmin, one cell per face of the induced subdivision."""

    subdivision: RegularSubdivision
    complex: PolyhedralComplex
    dual_faces: list[frozenset[int]]
    cell_polyhedra: list[Polyhedron] = field(repr=False)

    def cell_of(self, face: frozenset[int]) -> int:
        return self.dual_faces.index(face)


def dual_cell(config: PointConfiguration, heights: Sequence[Fraction], face: Iterable[int]) -> Polyhedron:
    """Closure of {x : argmin_i (h_i + p_i.x) contains ``face``}."""
    face = sorted(face)
    pts = config.points
    a0 = face[0]
    eqs = [(heights[b] - heights[a0],) + tuple(x - y for x, y in zip(pts[b], pts[a0])) for b in face[1:]]
    fs = set(face)
    ineqs = [
        (heights[x] - heights[a0],) + tuple(u - v for u, v in zip(pts[x], pts[a0]))
        for x in range(len(pts))
        if x not in fs
    ]
    return Polyhedron(config.dim, inequalities=ineqs, equations=eqs)


def normal_complex(config: PointConfiguration, heights: Sequence, faces: Iterable[frozenset[int]] | None = None) -> NormalComplex:
    """Normal complex in the ambient space of the points.

    If the points do not span their ambient space affinely, every cell
    carries the lineality space; use :meth:`PointConfiguration.chart` first
    to work in a quotient.
    """
    heights = tuple(to_rational(h) for h in heights)
    sub = regular_subdivision(config, heights)
    faces = list(faces) if faces is not None else subdivision_faces(sub)
    polys = [dual_cell(config, heights, s) for s in faces]
    cplx = PolyhedralComplex.from_polyhedra(polys, config.dim)
    return NormalComplex(sub, cplx, faces, polys)


def tight_span(sub: RegularSubdivision) -> PolyhedralComplex:
    """Bounded part of the normal complex, vertices labelled by maximal cells.

    Vertex ``i`` is dual to ``sub.maximal_cells[i]``; the returned cells are
    the inclusion-maximal bounded faces, as sets of those labels.
    """
    if sub.heights is None:
        raise ValueError("tight span needs the inducing heights")
    chart, _ = sub.config.chart()
    faces = subdivision_faces(sub)
    vertices = []
    for c in sub.maximal_cells:
        p = dual_cell(chart, sub.heights, c)
        vertices.append((Fraction(1),) + p.points[0])
    bounded = []
    for s in faces:
        labels = frozenset(k for k, c in enumerate(sub.maximal_cells) if s <= set(c))
        if len(labels) == 1:
            bounded.append(labels)
            continue
        if dual_cell(chart, sub.heights, s).is_bounded():
            bounded.append(labels)
    maximal = sorted(
        {b for b in bounded if not any(b < o for o in bounded)}, key=lambda s: (len(s), sorted(s))
    )
    return PolyhedralComplex(chart.dim, vertices, maximal)
