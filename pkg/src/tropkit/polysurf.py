"""Tropical polynomials (Min), their hypersurfaces, and plane-curve invariants."""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cycles import TropicalCycle
from .geometry.linalg import lattice_length
from .geometry.polyhedron import Polyhedron
from .geometry.subdivision import (
    PointConfiguration,
    RegularSubdivision,
    dual_cell,
    is_unimodular,
    regular_subdivision,
    subdivision_faces,
)
from .rational import INF, Infinity, to_rational


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True, eq=False)
class TropicalPolynomial:
    """Min-plus polynomial: terms map exponent vectors to rational coefficients.

    Terms keep their input order (so indices match the caller's monomial
    list); equality ignores the order.
    """

    n_vars: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __init__(self, n_vars: int, terms: Mapping | Iterable):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != n_vars:
                raise ValueError(f"exponent {e} does not have {n_vars} entries")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            if e in acc:
                raise ValueError(f"repeated exponent {e}")
            acc[e] = to_rational(c)
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "terms", tuple(acc.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropicalPolynomial):
            return NotImplemented
        return self.n_vars == other.n_vars and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.n_vars, tuple(sorted(self.terms))))

    @classmethod
    def from_lists(cls, monomials: Sequence[Sequence[int]], coefficients: Sequence) -> TropicalPolynomial:
        if len(monomials) != len(coefficients):
            raise ValueError("one coefficient per monomial")
        return cls(len(monomials[0]), list(zip(monomials, coefficients)))

    @property
    def monomials(self) -> list[tuple[int, ...]]:
        return [e for e, _ in self.terms]

    @property
    def coefficients(self) -> list[Fraction]:
        return [c for _, c in self.terms]

    def __len__(self) -> int:
        return len(self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.monomials}) == 1

    def degree(self) -> int:
        sums = {sum(e) for e in self.monomials}
        if len(sums) != 1:
            raise ValueError("polynomial is not homogeneous")
        return sums.pop()

    def term_values(self, x: Sequence) -> list[Fraction]:
        x = [to_rational(c) for c in x]
        return [c + sum(a * b for a, b in zip(e, x)) for e, c in self.terms]

    def evaluate(self, x: Sequence) -> Fraction:
        return min(self.term_values(x))

    def argmin(self, x: Sequence) -> frozenset[int]:
        """Indices (into ``terms``) of the terms attaining the minimum at x."""
        vals = self.term_values(x)
        m = min(vals)
        return frozenset(i for i, v in enumerate(vals) if v == m)

    def __mul__(self, other: TropicalPolynomial) -> TropicalPolynomial:
        if not isinstance(other, TropicalPolynomial):
            return NotImplemented
        if other.n_vars != self.n_vars:
            raise ValueError("polynomials in different numbers of variables")
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms:
            for f, d in other.terms:
                g = tuple(a + b for a, b in zip(e, f))
                if g not in acc or c + d < acc[g]:
                    acc[g] = c + d
        return TropicalPolynomial(self.n_vars, acc)

    def __str__(self) -> str:
        parts = []
        for e, c in self.terms:
            bits = [] if c == 0 and any(e) else [_fmt(c)]
            for i, k in enumerate(e):
                if k == 1:
                    bits.append(f"x{i}")
                elif k > 1:
                    bits.append(f"{k}*x{i}")
            parts.append("+".join(bits).replace("+-", "-"))
        return "min(" + ",".join(parts) + ")"


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def polynomial_product(f: TropicalPolynomial, g: TropicalPolynomial) -> TropicalPolynomial:
    return f * g


# ---------------------------------------------------------------------------
# parsing "min(c + k*xi + ..., ...)"

_TOKEN = re.compile(r"(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*(),]))")


def _tokens(text: str, offset: int = 0):
    pos = 0
    out = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", offset + pos)
        if m.group("num"):
            out.append(("num", Fraction(m.group("num")), pos))
        elif m.group("var"):
            out.append(("var", int(m.group("idx")), pos))
        else:
            out.append((m.group("op"), None, pos))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_tropical_polynomial(text: str, n_vars: int | None = None) -> TropicalPolynomial:
    """Parse ``min(term, ...)`` where a term is a sum of rationals and k*xi."""
    stripped = text.strip()
    if stripped.lower().startswith("max"):
        raise PolynomialSyntaxError("only min(...) polynomials are accepted", text.find("max"))
    head = re.match(r"\s*min\s*\(", text)
    if not head:
        raise PolynomialSyntaxError("expected 'min('", 0)
    toks = _tokens(text[head.end():], head.end())
    offset = head.end()
    i = 0
    raw_terms: list[tuple[dict[int, int], Fraction]] = []

    def err(msg):
        raise PolynomialSyntaxError(msg, offset + toks[i][2])

    while True:
        exps: dict[int, int] = defaultdict(int)
        const = Fraction(0)
        sign = 1
        expect_summand = True
        while True:
            kind, val, _ = toks[i]
            if kind in "+-" and expect_summand:
                sign = sign * (-1 if kind == "-" else 1)
                i += 1
                continue
            if kind == "num" and expect_summand:
                i += 1
                if toks[i][0] == "*":
                    i += 1
                    if toks[i][0] != "var":
                        err("expected a variable after '*'")
                    if val.denominator != 1 or sign < 0:
                        err("exponents must be nonnegative integers")
                    exps[toks[i][1]] += int(val)
                    i += 1
                else:
                    const += sign * val
                sign, expect_summand = 1, False
                continue
            if kind == "var" and expect_summand:
                if sign < 0:
                    err("exponents must be nonnegative integers")
                i += 1
                k = 1
                if toks[i][0] == "*":
                    i += 1
                    if toks[i][0] != "num" or toks[i][1].denominator != 1:
                        err("expected an integer multiplier")
                    k = int(toks[i][1])
                    i += 1
                exps[val] += k
                sign, expect_summand = 1, False
                continue
            if kind in "+-" and not expect_summand:
                expect_summand = True
                continue
            if kind in ",)" and not expect_summand:
                break
            err(f"unexpected token {kind!r}")
        raw_terms.append((dict(exps), const))
        if toks[i][0] == ")":
            i += 1
            break
        i += 1
    if toks[i][0] != "end":
        err("trailing input after ')'")
    nv = max((max(e) + 1 for e, _ in raw_terms if e), default=0)
    if n_vars is not None:
        if n_vars < nv:
            raise ValueError(f"polynomial uses {nv} variables, more than {n_vars}")
        nv = n_vars
    terms = []
    seen = set()
    for e, c in raw_terms:
        vec = tuple(e.get(k, 0) for k in range(nv))
        if vec in seen:
            raise ValueError(f"repeated monomial {vec}")
        seen.add(vec)
        terms.append((vec, c))
    return TropicalPolynomial(nv, terms)


# ---------------------------------------------------------------------------
# hypersurfaces


@dataclass(eq=False)
class Hypersurface:
    """T(F) in the chart of the torus, with its dual subdivision.

    For homogeneous F the last coordinate is fixed to 0 (and the last
    exponent dropped), so the ambient space is R^{n_vars - 1}.
    """

    polynomial: TropicalPolynomial
    chart: PointConfiguration | None
    dual_subdivision: RegularSubdivision | None
    cycle: TropicalCycle
    dual_edges: list[frozenset[int]]
    _faces: list[frozenset[int]] | None = field(default=None, repr=False)

    @property
    def ambient_dim(self) -> int:
        return self.cycle.ambient_dim

    @property
    def homogeneous(self) -> bool:
        return self.polynomial.is_homogeneous()

    def faces(self) -> list[frozenset[int]]:
        if self._faces is None:
            self._faces = subdivision_faces(self.dual_subdivision)
        return self._faces

    def contains(self, x: Sequence) -> bool:
        """Whether the chart point x lies on T(F)."""
        return len(self.polynomial.argmin(self.lift(x))) >= 2

    def lift(self, x: Sequence) -> tuple:
        x = tuple(to_rational(c) for c in x)
        return x + (Fraction(0),) if self.homogeneous else x


def _chart_points(f: TropicalPolynomial) -> list[tuple[int, ...]]:
    if f.is_homogeneous() and f.n_vars > 0:
        return [e[:-1] for e in f.monomials]
    return list(f.monomials)


def hypersurface(f: TropicalPolynomial) -> Hypersurface:
    pts = _chart_points(f)
    n = len(pts[0])
    if len(f) < 2:
        return Hypersurface(f, PointConfiguration(pts) if n else None, None, TropicalCycle.empty(n), [])
    cfg = PointConfiguration(pts)
    heights = f.coefficients
    sub = regular_subdivision(cfg, heights)
    faces = subdivision_faces(sub)
    edges = []
    cells, weights = [], []
    for s in faces:
        verts = Polyhedron.from_points([cfg.points[i] for i in s])
        if verts.affine_dim != 1:
            continue
        # collinear labelled points are ordered lexicographically along the edge
        a, b = min(verts.points), max(verts.points)
        edges.append(s)
        cells.append(dual_cell(cfg, heights, s))
        weights.append(int(lattice_length(tuple(x - y for x, y in zip(a, b)))))
    h = Hypersurface(f, cfg, sub, TropicalCycle(n, cells, weights), edges)
    h._faces = faces
    return h


def hypersurface_degree(h: Hypersurface) -> int:
    return h.polynomial.degree()


def is_smooth(h: Hypersurface) -> bool:
    if h.dual_subdivision is None:
        return True
    return is_unimodular(h.dual_subdivision)


# ---------------------------------------------------------------------------
# plane curves


@dataclass
class MetricGraph:
    nodes: list
    edges: list[tuple[object, object, Fraction]]

    @property
    def genus(self) -> int:
        return len(self.edges) - len(self.nodes) + _components(self.nodes, self.edges)

    def degree(self, v) -> int:
        return sum((a == v) + (b == v) for a, b, _ in self.edges)


def _components(nodes, edges) -> int:
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b, _ in edges:
        parent[find(a)] = find(b)
    return len({find(v) for v in nodes})


def _require_curve(h: Hypersurface) -> None:
    if h.ambient_dim != 2:
        raise ValueError("not a plane curve")


def curve_edge_lengths(h: Hypersurface) -> list[tuple[Polyhedron, Fraction | Infinity]]:
    """Lattice length of every edge of the curve; rays have length inf."""
    _require_curve(h)
    out = []
    for c in h.cycle.cells:
        if not c.is_bounded():
            out.append((c, INF))
            continue
        v, w = c.points
        out.append((c, lattice_length(tuple(a - b for a, b in zip(v, w)))))
    return out


def curve_graph(h: Hypersurface) -> MetricGraph:
    """Vertices and bounded edges of the curve, vertices given by coordinates."""
    _require_curve(h)
    nodes = set()
    edges = []
    for c, length in curve_edge_lengths(h):
        nodes.update(c.points)
        if length != INF:
            v, w = c.points
            edges.append((v, w, length))
    return MetricGraph(sorted(nodes), edges)


def genus(h: Hypersurface) -> int:
    """First Betti number of the curve's vertex/bounded-edge graph."""
    return curve_graph(h).genus


def skeleton(h: Hypersurface) -> MetricGraph:
    """Prune leaves of the bounded graph, then smooth degree-2 vertices."""
    g = curve_graph(h)
    if g.genus < 2:
        raise ValueError(f"skeleton needs genus at least 2, got {g.genus}")
    return suppress_degree_two(prune_leaves(g))


def prune_leaves(g: MetricGraph) -> MetricGraph:
    nodes = list(g.nodes)
    edges = list(g.edges)
    while True:
        deg = {v: 0 for v in nodes}
        for a, b, _ in edges:
            deg[a] += 1
            deg[b] += 1
        leaves = {v for v in nodes if deg[v] <= 1}
        if not leaves:
            return MetricGraph(nodes, edges)
        nodes = [v for v in nodes if v not in leaves]
        edges = [e for e in edges if e[0] not in leaves and e[1] not in leaves]


def suppress_degree_two(g: MetricGraph) -> MetricGraph:
    nodes = list(g.nodes)
    edges = list(g.edges)
    changed = True
    while changed:
        changed = False
        for v in nodes:
            inc = [e for e in edges if v in (e[0], e[1])]
            if len(inc) != 2 or inc[0] is inc[1] or any(e[0] == e[1] for e in inc):
                continue
            e1, e2 = inc
            a = e1[0] if e1[1] == v else e1[1]
            b = e2[0] if e2[1] == v else e2[1]
            edges = [e for e in edges if e is not e1 and e is not e2] + [(a, b, e1[2] + e2[2])]
            nodes = [u for u in nodes if u != v]
            changed = True
            break
    out = MetricGraph(nodes, edges)
    if any(out.degree(v) != 3 for v in nodes):
        raise ValueError("curve is not generic: skeleton is not trivalent")
    return out
