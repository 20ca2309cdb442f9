"""Weighted balanced polyhedral complexes and their stable intersection.

Cycles live in the chart R^n of the tropical projective torus R^{n+1}/R1
obtained by setting the last coordinate to 0. A cycle is stored by its
maximal cells (``Polyhedron`` objects, all of the same dimension) and an
integer weight per cell.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .geometry.complex import PolyhedralComplex
from .geometry.linalg import (
    dot,
    integer_kernel,
    lattice_index as _lattice_index,
    rank,
    saturated_basis,
    solve,
)
from .geometry.polyhedron import Polyhedron


class NonGenericDisplacement(RuntimeError):
    pass


class NotBalanced(ValueError):
    pass


@dataclass(eq=False)
class TropicalCycle:
    ambient_dim: int
    cells: list[Polyhedron]
    weights: list[int]
    _face_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.cells) != len(self.weights):
            raise ValueError("one weight per maximal cell")
        for c in self.cells:
            if c.dim != self.ambient_dim:
                raise ValueError("cell dimension does not match the ambient space")

    @classmethod
    def empty(cls, ambient_dim: int) -> TropicalCycle:
        return cls(ambient_dim, [], [])

    @property
    def dim(self) -> int:
        return max((c.affine_dim for c in self.cells), default=-1)

    def is_pure(self) -> bool:
        return len({c.affine_dim for c in self.cells}) <= 1

    def is_empty(self) -> bool:
        return not self.cells

    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def complex(self) -> PolyhedralComplex:
        return PolyhedralComplex.from_polyhedra(self.cells, self.ambient_dim)

    def contains(self, x: Sequence) -> bool:
        return any(c.contains(x) for c in self.cells)

    def faces(self, d: int) -> list[tuple[Polyhedron, list[int]]]:
        """d-dimensional faces, each with the indices of the maximal cells containing it."""
        if d not in self._face_cache:
            found: dict[tuple, tuple[Polyhedron, list[int]]] = {}
            for i, c in enumerate(self.cells):
                for f in c.faces(d):
                    k = f.key()
                    if k not in found:
                        found[k] = (f, [])
                    found[k][1].append(i)
            self._face_cache[d] = [found[k] for k in sorted(found)]
        return self._face_cache[d]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropicalCycle):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.canonical() == other.canonical()

    __hash__ = None

    def canonical(self) -> list[tuple[tuple, int]]:
        """Sorted (cell key, weight) pairs, merging duplicate cells."""
        acc: dict[tuple, int] = {}
        for c, w in zip(self.cells, self.weights):
            acc[c.key()] = acc.get(c.key(), 0) + w
        return sorted((k, w) for k, w in acc.items() if w)


@dataclass(eq=False)
class LocalFan:
    base: tuple[Fraction, ...]
    cones: list[Polyhedron]
    weights: list[int]


# ---------------------------------------------------------------------------
# lattices attached to cells


def cell_lattice(p: Polyhedron) -> list[tuple[int, ...]]:
    """Basis of the saturated lattice parallel to the affine hull of ``p``."""
    return saturated_basis(p.directions, p.dim) if p.directions else []


def lattice_index(basis1: Sequence[Sequence[int]], basis2: Sequence[Sequence[int]], n: int | None = None) -> int:
    """[Z^n : L1 + L2]; the two generating sets together must span R^n."""
    gens = [tuple(map(int, v)) for v in list(basis1) + list(basis2)]
    if n is None:
        n = len(gens[0])
    return _lattice_index(gens, n)


def _bezout(y: Sequence[int]) -> list[int]:
    """Integer z with y.z = gcd(y)."""
    g, z = 0, [0] * len(y)
    for i, a in enumerate(y):
        if a == 0:
            continue
        if g == 0:
            g, z = abs(a), [0] * len(y)
            z[i] = 1 if a > 0 else -1
            continue
        # extended Euclid on (g, a)
        old_r, r, old_s, s, old_t, t = g, a, 1, 0, 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        z = [old_s * x for x in z]
        z[i] += old_t
        g = old_r
    return z


def lattice_normal(sigma: Polyhedron, tau: Polyhedron) -> tuple[int, ...]:
    """A primitive generator of L_sigma / L_tau pointing from tau into sigma."""
    n = sigma.dim
    bs = cell_lattice(sigma)
    bt = cell_lattice(tau)
    k = len(bs)
    # coordinates of L_tau's basis in the basis of L_sigma
    cols = [[Fraction(b[r]) for b in bs] for r in range(n)]
    coords = [solve(cols, [Fraction(x) for x in v]) for v in bt]
    y = integer_kernel([[int(c) for c in row] for row in coords], k) if coords else [
        tuple(int(i == j) for j in range(k)) for i in range(k)
    ]
    if len(y) != 1:
        raise ValueError("tau is not a codimension-one face of sigma")
    y = y[0]
    z = _bezout(y)
    u = tuple(sum(zi * b[r] for zi, b in zip(z, bs)) for r in range(n))
    w = tuple(a - b for a, b in zip(sigma.relative_interior_point(), tau.relative_interior_point()))
    wc = solve(cols, list(w))
    if dot(y, wc) < 0:
        u = tuple(-x for x in u)
    return u


def is_balanced(x: TropicalCycle) -> bool:
    if not x.is_pure():
        raise ValueError("balancing needs a pure complex")
    if x.is_empty() or x.dim == 0:
        return True
    for tau, owners in x.faces(x.dim - 1):
        total = [0] * x.ambient_dim
        for i in owners:
            u = lattice_normal(x.cells[i], tau)
            total = [t + x.weights[i] * c for t, c in zip(total, u)]
        if any(total):
            span = list(tau.directions)
            if rank(span + [total]) != rank(span):
                return False
    return True


def star_fan(x: TropicalCycle, p: Sequence) -> LocalFan:
    p = tuple(Fraction(c) for c in p)
    cones, weights = [], []
    for c, w in zip(x.cells, x.weights):
        if c.contains(p):
            cones.append(c.tangent_cone(p))
            weights.append(w)
    if not cones:
        raise ValueError("point is not in the support of the cycle")
    return LocalFan(p, cones, weights)


# ---------------------------------------------------------------------------
# stable intersection


@dataclass(frozen=True)
class DisplacementConfig:
    """How generic displacement vectors are drawn and retried."""

    seed: int = 0
    denominator: int = 10**6
    max_tries: int = 20


def random_displacement(n: int, rng: random.Random, denominator: int = 10**6) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-denominator, denominator), denominator) for _ in range(n))


def _cone_generators(c: Polyhedron) -> tuple[list, list]:
    return [tuple(r) for r in c.rays], [tuple(l) for l in c.lineality]


def _displaced_meet(cs: Polyhedron, ct: Polyhedron, v: Sequence[Fraction], n: int) -> bool:
    """Whether v lies in the interior of C_sigma - C_tau; raises if v is not generic."""
    rs, ls = _cone_generators(cs)
    rt, lt = _cone_generators(ct)
    diff = Polyhedron.cone(rs + [tuple(-x for x in r) for r in rt], ls + lt, dim=n)
    if not diff.contains(v):
        return False
    if diff.equations or not diff.in_relative_interior(v):
        raise NonGenericDisplacement("displacement lies on a wall of a Minkowski difference")
    return True


def _intersection_cells(x: TropicalCycle, y: TropicalCycle, d: int) -> list[Polyhedron]:
    found: dict[tuple, Polyhedron] = {}
    for s in x.cells:
        for t in y.cells:
            q = s.intersection(t)
            if q.is_empty() or q.affine_dim < d:
                continue
            for f in q.faces(d):
                found.setdefault(f.key(), f)
    return [found[k] for k in sorted(found)]


def _multiplicity(x, y, rho, v, lat_x, lat_y, n) -> int:
    p = rho.relative_interior_point()
    total = 0
    xs = [i for i, c in enumerate(x.cells) if c.contains(p)]
    ys = [j for j, c in enumerate(y.cells) if c.contains(p)]
    tx = {i: x.cells[i].tangent_cone(p) for i in xs}
    ty = {j: y.cells[j].tangent_cone(p) for j in ys}
    for i in xs:
        for j in ys:
            if rank(list(lat_x[i]) + list(lat_y[j])) < n:
                # v avoids lower-dimensional difference cones unless it is special
                if _in_cone(tx[i], ty[j], v, n):
                    raise NonGenericDisplacement("displacement lies in a degenerate difference cone")
                continue
            if _displaced_meet(tx[i], ty[j], v, n):
                total += x.weights[i] * y.weights[j] * lattice_index(lat_x[i], lat_y[j], n)
    return total


def _in_cone(cs, ct, v, n) -> bool:
    rs, ls = _cone_generators(cs)
    rt, lt = _cone_generators(ct)
    return Polyhedron.cone(rs + [tuple(-a for a in r) for r in rt], ls + lt, dim=n).contains(v)


def stable_intersection(
    x: TropicalCycle,
    y: TropicalCycle,
    seed: int = 0,
    displacement: Sequence | None = None,
    max_tries: int = 20,
    config: DisplacementConfig | None = None,
) -> TropicalCycle:
    """Stable intersection by the fan displacement rule.

    Candidate cells are the faces of the right dimension of all pairwise
    intersections of maximal cells. At a relative interior point p of a
    candidate, a pair (sigma, tau) contributes m_sigma m_tau [Z^n : L_sigma + L_tau]
    when sigma meets tau + v near p for the displacement v.
    """
    if x.ambient_dim != y.ambient_dim:
        raise ValueError("cycles live in different ambient spaces")
    n = x.ambient_dim
    if x.is_empty() or y.is_empty():
        return TropicalCycle.empty(n)
    d = x.dim + y.dim - n
    if d < 0:
        return TropicalCycle.empty(n)
    candidates = _intersection_cells(x, y, d)
    lat_x = [cell_lattice(c) for c in x.cells]
    lat_y = [cell_lattice(c) for c in y.cells]
    config = config or DisplacementConfig(seed=seed, max_tries=max_tries)
    rng = random.Random(config.seed)
    tries = 0
    while True:
        if displacement is not None:
            v = tuple(Fraction(c) for c in displacement)
        else:
            v = random_displacement(n, rng, config.denominator)
        try:
            cells, weights = [], []
            for rho in candidates:
                m = _multiplicity(x, y, rho, v, lat_x, lat_y, n)
                if m:
                    cells.append(rho)
                    weights.append(m)
            return TropicalCycle(n, cells, weights)
        except NonGenericDisplacement:
            tries += 1
            if displacement is not None or tries >= config.max_tries:
                raise


def degree(x: TropicalCycle, seed: int = 0) -> int:
    """Total weight of the intersection with a complementary standard linear space."""
    if x.is_empty():
        return 0
    if x.dim == 0:
        return x.total_weight()
    if not is_balanced(x):
        raise NotBalanced("degree is only defined for balanced cycles")
    from .linspace import standard_linear_space

    n = x.ambient_dim
    line = standard_linear_space(n - x.dim, n)
    return stable_intersection(x, line, seed=seed).total_weight()


def reflect(x: TropicalCycle) -> TropicalCycle:
    """Image under x -> -x; turns Min-convention cycles into Max-convention ones."""

    def neg(v):
        return tuple(-c for c in v)

    cells = [
        Polyhedron(c.dim, points=[neg(p) for p in c.points], rays=[neg(r) for r in c.rays], lineality=c.lineality)
        for c in x.cells
    ]
    return TropicalCycle(x.ambient_dim, cells, list(x.weights))


def bounded_complex(x: TropicalCycle) -> PolyhedralComplex:
    """All bounded faces of all cells, as a complex (cells listed by dimension)."""
    found: dict[tuple, Polyhedron] = {}
    for c in x.cells:
        for f in c.faces():
            if f.is_bounded():
                found.setdefault(f.key(), f)
    faces = sorted(found.values(), key=lambda f: (f.affine_dim, f.key()))
    if not faces:
        return PolyhedralComplex(x.ambient_dim, [], [])
    return PolyhedralComplex.from_polyhedra(faces, x.ambient_dim)
