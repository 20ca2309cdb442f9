"""JSON envelopes ``{kind, version, payload}`` for every persisted object.

Rationals are written as strings ("p/q", "inf"); vectors as lists.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .arith import ORIENTATIONS, TropicalMatrix
from .auctions import AgentUtility, AuctionInstance
from .cycles import TropicalCycle
from .geometry.polyhedron import Polyhedron
from .geometry.subdivision import Cone, PointConfiguration, RegularSubdivision
from .linspace import ValuatedMatroid
from .matroids import Matroid
from .polysurf import MetricGraph, TropicalPolynomial
from .rational import format_scalar, parse_scalar, to_rational

VERSION = "1"
KINDS = (
    "matrix",
    "polynomial",
    "subdivision",
    "cone",
    "matroid",
    "valuated_matroid",
    "cycle",
    "auction",
    "metric_graph",
)


class EnvelopeError(ValueError):
    pass


def _vec(v) -> list[str]:
    return [format_scalar(x) for x in v]


def _ints(v) -> list[int]:
    return [int(x) for x in v]


def _rvec(v) -> tuple[Fraction, ...]:
    return tuple(to_rational(x) for x in v)


# -- payload writers ------------------------------------------------------------


def _matrix(m: TropicalMatrix) -> dict:
    return {"orientation": m.scalar.orientation.lower(), "rows": [_vec(r) for r in m.to_lists()]}


def _polynomial(f: TropicalPolynomial) -> dict:
    return {"n_vars": f.n_vars, "terms": [{"coeff": format_scalar(c), "exponents": list(e)} for e, c in f.terms]}


def _config(c: PointConfiguration) -> dict:
    return {"dim": c.dim, "points": [_vec(p) for p in c.points]}


def _subdivision(s: RegularSubdivision) -> dict:
    return {
        "config": _config(s.config),
        "heights": None if s.heights is None else _vec(s.heights),
        "maximal_cells": [list(c) for c in s.maximal_cells],
    }


def _cone(c: Cone) -> dict:
    return {
        "ambient_dim": c.ambient_dim,
        "rays": [_vec(r) for r in c.rays],
        "lineality": [_vec(r) for r in c.lineality],
        "facets": [_vec(r) for r in c.facets],
        "equations": [_vec(r) for r in c.equations],
    }


def _matroid(m: Matroid) -> dict:
    return {"n": m.n, "bases": [sorted(b) for b in m.bases]}


def _valuated(vm: ValuatedMatroid) -> dict:
    return {"matroid": _matroid(vm.matroid), "valuation": _vec(vm.valuation)}


def _cycle(x: TropicalCycle) -> dict:
    cx = x.complex if x.cells else None
    return {
        "n": x.ambient_dim,
        "vertices": [_vec(v) for v in cx.vertices] if cx else [],
        "lineality": [_vec(l) for l in cx.lineality] if cx else [],
        "maximal_cells": [sorted(c) for c in cx.cells] if cx else [],
        "weights": list(x.weights),
    }


def _auction(a: AuctionInstance) -> dict:
    return {
        "goods": a.goods,
        "agents": [{"bundles": [list(b) for b in g.bundles], "utilities": _vec(g.utilities)} for g in a.agents],
    }


def _node(v):
    return _vec(v) if isinstance(v, tuple) else v


def _metric_graph(g: MetricGraph) -> dict:
    return {
        "nodes": [_node(v) for v in g.nodes],
        "edges": [{"ends": [_node(a), _node(b)], "length": format_scalar(l)} for a, b, l in g.edges],
    }


_WRITERS = {
    TropicalMatrix: ("matrix", _matrix),
    TropicalPolynomial: ("polynomial", _polynomial),
    RegularSubdivision: ("subdivision", _subdivision),
    Cone: ("cone", _cone),
    Matroid: ("matroid", _matroid),
    ValuatedMatroid: ("valuated_matroid", _valuated),
    TropicalCycle: ("cycle", _cycle),
    AuctionInstance: ("auction", _auction),
    MetricGraph: ("metric_graph", _metric_graph),
}


def to_envelope(obj) -> dict:
    for cls, (kind, writer) in _WRITERS.items():
        if isinstance(obj, cls):
            return {"kind": kind, "version": VERSION, "payload": writer(obj)}
    raise TypeError(f"no envelope for {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_envelope(obj), indent=1, sort_keys=True)


# -- payload readers ------------------------------------------------------------


def read_matrix(p: dict) -> TropicalMatrix:
    scalar = ORIENTATIONS[p.get("orientation", "min").lower()]
    return TropicalMatrix([[parse_scalar(x) for x in r] for r in p["rows"]], scalar)


def read_polynomial(p: dict) -> TropicalPolynomial:
    return TropicalPolynomial(p["n_vars"], [(t["exponents"], t["coeff"]) for t in p["terms"]])


def read_config(p: dict) -> PointConfiguration:
    cfg = PointConfiguration(p["points"])
    if "dim" in p and cfg.dim != p["dim"]:
        raise EnvelopeError("configuration dim does not match its points")
    return cfg


def read_subdivision(p: dict) -> RegularSubdivision:
    cfg = read_config(p["config"])
    heights = p.get("heights")
    return RegularSubdivision(
        cfg,
        None if heights is None else _rvec(heights),
        tuple(sorted(tuple(sorted(int(i) for i in c)) for c in p["maximal_cells"])),
    )


def read_cone(p: dict) -> Cone:
    return Cone(
        p["ambient_dim"],
        rays=[_rvec(r) for r in p.get("rays", [])],
        lineality=[_rvec(r) for r in p.get("lineality", [])],
        facets=[_rvec(r) for r in p.get("facets", [])],
        equations=[_rvec(r) for r in p.get("equations", [])],
    )


def read_matroid(p: dict) -> Matroid:
    return Matroid(p["n"], p["bases"])


def read_valuated(p: dict) -> ValuatedMatroid:
    return ValuatedMatroid(read_matroid(p["matroid"]), p["valuation"])


def read_cycle(p: dict) -> TropicalCycle:
    n = p["n"]
    rows = [_rvec(v) for v in p["vertices"]]
    lin = [_rvec(l) for l in p.get("lineality", [])]
    cells = []
    for c in p["maximal_cells"]:
        pts = [rows[i][1:] for i in c if rows[i][0] != 0]
        rays = [rows[i][1:] for i in c if rows[i][0] == 0]
        cells.append(Polyhedron(n, points=pts, rays=rays, lineality=lin))
    return TropicalCycle(n, cells, [int(w) for w in p["weights"]])


def read_auction(p: dict) -> AuctionInstance:
    return AuctionInstance(p["goods"], [AgentUtility(a["bundles"], a["utilities"]) for a in p["agents"]])


def _read_node(v):
    return _rvec(v) if isinstance(v, list) else v


def read_metric_graph(p: dict) -> MetricGraph:
    return MetricGraph(
        [_read_node(v) for v in p["nodes"]],
        [(_read_node(e["ends"][0]), _read_node(e["ends"][1]), parse_scalar(e["length"])) for e in p["edges"]],
    )


_READERS = {
    "matrix": read_matrix,
    "polynomial": read_polynomial,
    "subdivision": read_subdivision,
    "cone": read_cone,
    "matroid": read_matroid,
    "valuated_matroid": read_valuated,
    "cycle": read_cycle,
    "auction": read_auction,
    "metric_graph": read_metric_graph,
}


def from_envelope(env: dict, kind: str | None = None):
    if not isinstance(env, dict) or not {"kind", "version", "payload"} <= env.keys():
        raise EnvelopeError("expected an object with kind, version and payload")
    if env["version"] != VERSION:
        raise EnvelopeError(f"unsupported envelope version {env['version']!r}")
    if env["kind"] not in _READERS:
        raise EnvelopeError(f"unknown kind {env['kind']!r}")
    if kind is not None and env["kind"] != kind:
        raise EnvelopeError(f"expected a {kind} envelope, got {env['kind']}")
    try:
        return _READERS[env["kind"]](env["payload"])
    except (KeyError, TypeError) as e:
        raise EnvelopeError(f"malformed {env['kind']} payload: {e}") from e


def loads(text: str, kind: str | None = None):
    return from_envelope(json.loads(text), kind)


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("tropkit.fixtures").joinpath(name)))


def load_fixture(name: str, kind: str | None = None) -> Any:
    return loads(fixture_path(name).read_text(), kind)
