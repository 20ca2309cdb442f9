"""Matroids given by explicit basis lists."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Mapping

from .geometry.polyhedron import Polyhedron
from .geometry.subdivision import PointConfiguration

# Lines of the Fano plane on {0,...,6}: translates of {0,1,3} mod 7.
FANO_LINES = tuple(frozenset((i % 7, (i + 1) % 7, (i + 3) % 7)) for i in range(7))


def check_basis_exchange_axiom(sets: Iterable[Iterable[int]]) -> bool:
    """For all B1, B2 and i in B1 - B2 there is j in B2 - B1 with B1 - i + j a basis."""
    bases = {frozenset(s) for s in sets}
    if not bases:
        return False
    if len({len(b) for b in bases}) != 1:
        raise ValueError("basis candidates have different cardinalities")
    for b1 in bases:
        for b2 in bases:
            for i in b1 - b2:
                if not any((b1 - {i}) | {j} in bases for j in b2 - b1):
                    return False
    return True


@dataclass(frozen=True)
class Matroid:
    n: int
    bases: tuple[frozenset[int], ...]

    def __init__(self, n: int, bases: Iterable[Iterable[int]], check: bool = True):
        bs = sorted({frozenset(b) for b in bases}, key=sorted)
        if not bs:
            raise ValueError("a matroid needs at least one basis")
        if any(x < 0 or x >= n for b in bs for x in b):
            raise ValueError("basis element outside the ground set")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bases", tuple(bs))
        if check and not check_basis_exchange_axiom(bs):
            raise ValueError("sets violate the basis exchange axiom")

    @property
    def rank(self) -> int:
        return len(self.bases[0])

    def rank_of(self, a: Iterable[int]) -> int:
        a = frozenset(a)
        return max(len(a & b) for b in self.bases)

    def closure(self, a: Iterable[int]) -> frozenset[int]:
        a = frozenset(a)
        r = self.rank_of(a)
        return a | frozenset(e for e in range(self.n) if e not in a and self.rank_of(a | {e}) == r)

    def loops(self) -> frozenset[int]:
        used = frozenset().union(*self.bases)
        return frozenset(range(self.n)) - used

    def coloops(self) -> frozenset[int]:
        return frozenset.intersection(*self.bases)

    def delete(self, e: int) -> Matroid:
        """M \\ e, ground set relabelled to 0..n-2."""
        keep = [b for b in self.bases if e not in b]
        if not keep:  # e is a coloop
            keep = [b - {e} for b in self.bases]
        return Matroid(self.n - 1, [_shift(b, e) for b in keep], check=False)

    def contract(self, e: int) -> Matroid:
        keep = [b - {e} for b in self.bases if e in b]
        if not keep:  # e is a loop
            keep = list(self.bases)
        return Matroid(self.n - 1, [_shift(b, e) for b in keep], check=False)

    @cached_property
    def independent_sets(self) -> list[frozenset[int]]:
        out = set()
        for b in self.bases:
            for k in range(len(b) + 1):
                out.update(frozenset(c) for c in itertools.combinations(sorted(b), k))
        return sorted(out, key=lambda s: (len(s), sorted(s)))


def _shift(b: frozenset[int], e: int) -> frozenset[int]:
    return frozenset(x - (x > e) for x in b)


def uniform_matroid(k: int, n: int) -> Matroid:
    if not 0 <= k <= n:
        raise ValueError(f"invalid uniform matroid parameters ({k}, {n})")
    return Matroid(n, itertools.combinations(range(n), k), check=False)


def fano_matroid() -> Matroid:
    return Matroid(7, [t for t in itertools.combinations(range(7), 3) if frozenset(t) not in FANO_LINES], check=False)


def direct_sum(m: Matroid, n: Matroid) -> Matroid:
    return Matroid(m.n + n.n, [a | {x + m.n for x in b} for a in m.bases for b in n.bases], check=False)


def is_loopfree(m: Matroid) -> bool:
    return not m.loops()


def matroid_polytope(m: Matroid) -> PointConfiguration:
    """Basis indicator vectors, in the matroid's (lexicographic) basis order."""
    return PointConfiguration(tuple(int(i in b) for i in range(m.n)) for b in m.bases)


def polytope_edges(points) -> list[tuple[int, int]]:
    pts = [tuple(p) for p in points]
    poly = Polyhedron.from_points(pts)
    index = {p: i for i, p in enumerate(pts)}
    edges = []
    for inc in poly.face_incidences():
        if len(inc[0]) == 2 and not inc[1]:
            a, b = (index[tuple(poly.points[i])] for i in sorted(inc[0]))
            edges.append((min(a, b), max(a, b)))
    return sorted(edges)


def verify_edge_criterion(bases: Matroid | Iterable[Iterable[int]], n: int | None = None) -> bool:
    """Every edge of the basis polytope is parallel to some e_i - e_j."""
    if isinstance(bases, Matroid):
        n, bases = bases.n, bases.bases
    bases = [frozenset(b) for b in bases]
    if n is None:
        n = max(max(b) for b in bases if b) + 1
    pts = [tuple(int(i in b) for i in range(n)) for b in bases]
    for a, b in polytope_edges(pts):
        diff = [x - y for x, y in zip(pts[a], pts[b])]
        if sorted(x for x in diff if x) != [-1, 1]:
            return False
    return True


# ---------------------------------------------------------------------------
# flats


@dataclass(frozen=True)
class LatticeOfFlats:
    flats: tuple[frozenset[int], ...]
    ranks: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]  # (i, j): flat i is covered by flat j

    def of_rank(self, r: int) -> list[frozenset[int]]:
        return [f for f, k in zip(self.flats, self.ranks) if k == r]

    def proper_nonempty(self) -> list[frozenset[int]]:
        top = max(self.ranks)
        return [f for f, k in zip(self.flats, self.ranks) if 0 < k < top]

    def maximal_chains(self) -> list[tuple[frozenset[int], ...]]:
        """Chains of proper nonempty flats of full length."""
        top = max(self.ranks)
        up: dict[int, list[int]] = {}
        for i, j in self.covers:
            up.setdefault(i, []).append(j)
        bottom = self.ranks.index(0)
        chains = []

        def walk(i, path):
            if self.ranks[i] == top:
                chains.append(tuple(self.flats[k] for k in path[1:-1]))
                return
            for j in up.get(i, []):
                walk(j, path + [j])

        walk(bottom, [bottom])
        return chains


def lattice_of_flats(m: Matroid) -> LatticeOfFlats:
    found = {m.closure(())}
    frontier = set(found)
    while frontier:
        new = set()
        for f in frontier:
            for e in range(m.n):
                if e not in f:
                    g = m.closure(f | {e})
                    if g not in found:
                        new.add(g)
        found |= new
        frontier = new
    flats = sorted(found, key=lambda s: (m.rank_of(s), sorted(s)))
    ranks = [m.rank_of(f) for f in flats]
    covers = [
        (i, j)
        for i, a in enumerate(flats)
        for j, b in enumerate(flats)
        if a < b and ranks[j] == ranks[i] + 1
    ]
    return LatticeOfFlats(tuple(flats), tuple(ranks), tuple(covers))


# ---------------------------------------------------------------------------
# Tutte polynomial


@dataclass(frozen=True)
class BivariatePolynomial:
    coeffs: tuple[tuple[tuple[int, int], int], ...]

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[tuple[int, int], int] = {}
        for k, c in items:
            acc[tuple(k)] = acc.get(tuple(k), 0) + c
        object.__setattr__(self, "coeffs", tuple(sorted((k, c) for k, c in acc.items() if c)))

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> BivariatePolynomial:
        return cls({(i, j): c})

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.coeffs)

    def triples(self) -> list[tuple[int, int, int]]:
        return [(i, j, c) for (i, j), c in self.coeffs]

    def __add__(self, other: BivariatePolynomial) -> BivariatePolynomial:
        return BivariatePolynomial(list(self.coeffs) + list(other.coeffs))

    def __mul__(self, other: BivariatePolynomial) -> BivariatePolynomial:
        acc: dict[tuple[int, int], int] = {}
        for (a, b), c in self.coeffs:
            for (d, e), f in other.coeffs:
                acc[(a + d, b + e)] = acc.get((a + d, b + e), 0) + c * f
        return BivariatePolynomial(acc)

    def __call__(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in sorted(self.coeffs, key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])):
            mono = "*".join(
                p for p in (("x" if i == 1 else f"x^{i}") if i else "", ("y" if j == 1 else f"y^{j}") if j else "") if p
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def tutte_polynomial(m: Matroid) -> BivariatePolynomial:
    """Deletion-contraction on the smallest element that is neither loop nor coloop."""
    memo: dict[tuple, BivariatePolynomial] = {}

    def rec(mat: Matroid) -> BivariatePolynomial:
        key = (mat.n, mat.bases)
        if key in memo:
            return memo[key]
        loops, coloops = mat.loops(), mat.coloops()
        e = next((x for x in range(mat.n) if x not in loops and x not in coloops), None)
        if e is None:
            out = BivariatePolynomial.monomial(len(coloops), len(loops))
        else:
            out = rec(mat.delete(e)) + rec(mat.contract(e))
        memo[key] = out
        return out

    return rec(m)


def tutte_corank_nullity(m: Matroid) -> BivariatePolynomial:
    """Sum over all subsets A of (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))."""
    r = m.rank
    acc: dict[tuple[int, int], int] = {}
    for k in range(m.n + 1):
        for a in itertools.combinations(range(m.n), k):
            ra = m.rank_of(a)
            p, q = r - ra, k - ra
            # expand (x-1)^p (y-1)^q binomially
            for i in range(p + 1):
                for j in range(q + 1):
                    c = comb(p, i) * comb(q, j) * (-1) ** (p - i + q - j)
                    acc[(i, j)] = acc.get((i, j), 0) + c
    return BivariatePolynomial(acc)
