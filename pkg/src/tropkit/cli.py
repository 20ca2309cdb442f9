"""Command-line front end: ``tropkit <command> ...``.

Exit codes: 0 success, 1 unparsable input, 2 violated precondition,
3 internal invariant breach (or a failed reproduction check).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import serialize
from .arith import ORIENTATIONS, TropicalMatrix, kleene_star, tdet
from .auctions import competitive_equilibria
from .cycles import bounded_complex, degree, is_balanced, stable_intersection
from .geometry.subdivision import (
    Cone,
    RegularSubdivision,
    cone_membership,
    dual_description,
    secondary_cone,
    tight_span,
)
from .linspace import ValuatedMatroid, bergman_fan_from_flats, linear_space
from .matroids import (
    Matroid,
    check_basis_exchange_axiom,
    fano_matroid,
    lattice_of_flats,
    tutte_polynomial,
    uniform_matroid,
    verify_edge_criterion,
)
from .polysurf import (
    PolynomialSyntaxError,
    curve_edge_lengths,
    genus,
    hypersurface,
    parse_tropical_polynomial,
    skeleton,
)
from .rational import format_scalar, format_vector
from .reproduce import CHECKS, run_checks

EXIT_PARSE, EXIT_PRECONDITION, EXIT_INTERNAL = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input helpers ----------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    p = Path(path)
    if not p.exists():
        # fall back to a bundled fixture of the same name
        bundled = serialize.fixture_path(p.name)
        if bundled.exists():
            return bundled.read_text()
    return p.read_text()


def _load(path: str, kind: str):
    data = json.loads(_read_text(path))
    if isinstance(data, dict) and "kind" not in data:
        data = {"kind": kind, "version": serialize.VERSION, "payload": data}
    return serialize.from_envelope(data, kind)


def _polynomial(args):
    if args.poly is not None:
        return parse_tropical_polynomial(args.poly)
    if args.file is None:
        raise UsageError("give --poly TEXT or a polynomial file")
    text = _read_text(args.file)
    if text.lstrip().startswith("{"):
        return _load(args.file, "polynomial") if args.file != "-" else serialize.loads(text, "polynomial")
    return parse_tropical_polynomial(text)


def _emit(obj, args, summary: str | None = None) -> None:
    """Write the envelope to --output (printing the summary) or to stdout."""
    if getattr(args, "output", None):
        Path(args.output).write_text(serialize.dumps(obj) + "\n")
        if summary is not None:
            print(summary)
    else:
        print(serialize.dumps(obj))


def _matroid(args) -> Matroid:
    if getattr(args, "fano", False):
        return fano_matroid()
    if getattr(args, "uniform", None):
        k, n = args.uniform
        return uniform_matroid(k, n)
    if args.file is None:
        raise UsageError("give a matroid file, --fano or --uniform K N")
    return _load(args.file, "matroid")


def _fmt_set(s) -> str:
    return "{" + " ".join(str(i) for i in sorted(s)) + "}"


# -- commands -----------------------------------------------------------------------


def _matrix_arg(args) -> TropicalMatrix:
    if args.matrix is not None:
        return TropicalMatrix(json.loads(args.matrix), ORIENTATIONS[args.orientation])
    if args.file is None:
        raise UsageError("give --matrix JSON or a matrix file")
    return _load(args.file, "matrix")


def cmd_tdet(args) -> int:
    value, perm = tdet(_matrix_arg(args))
    print(f"{value} {perm}" if perm is not None else str(value))
    return 0


def cmd_kleene(args) -> int:
    star = kleene_star(_matrix_arg(args))
    if args.output:
        _emit(star, args)
    print(star)
    return 0


def cmd_hypersurface(args) -> int:
    h = hypersurface(_polynomial(args))
    _emit(h.cycle, args, f"{len(h.cycle.cells)} maximal cells in R^{h.ambient_dim}")
    return 0


def cmd_dual_subdivision(args) -> int:
    h = hypersurface(_polynomial(args))
    sub = h.dual_subdivision
    if sub is None:
        print("{0}")
        return 0
    if args.output:
        Path(args.output).write_text(serialize.dumps(sub) + "\n")
    print(f"N_MAXIMAL_CELLS {sub.n_maximal_cells}")
    for c in sub.maximal_cells:
        print(_fmt_set(c))
    return 0


def _subdivision(path: str) -> RegularSubdivision:
    return _load(path, "subdivision")


def cmd_secondary_cone(args) -> int:
    cone = dual_description(secondary_cone(_subdivision(args.file)))
    if args.output:
        Path(args.output).write_text(serialize.dumps(cone) + "\n")
    print(f"N_RAYS {len(cone.rays)}")
    for r in cone.rays:
        print(format_vector(r))
    return 0


def cmd_cone_membership(args) -> int:
    if args.cone:
        cone: Cone = _load(args.cone, "cone")
    elif args.subdivision:
        cone = secondary_cone(_subdivision(args.subdivision))
    else:
        raise UsageError("give --cone FILE or --subdivision FILE")
    vec = json.loads(args.vector)
    verdict, fp, ep = cone_membership(cone, [str(x) for x in vec])
    print(verdict.value)
    print("facets:", format_vector(fp))
    print("equations:", format_vector(ep))
    return 0


def cmd_tight_span(args) -> int:
    data = json.loads(_read_text(args.file))
    kind = data.get("kind", "subdivision") if isinstance(data, dict) else "subdivision"
    obj = _load(args.file, kind)
    sub = obj.subdivision if isinstance(obj, ValuatedMatroid) else obj
    ts = tight_span(sub)
    for c in ts.cells:
        print(_fmt_set(c))
    return 0


def cmd_matroid(args) -> int:
    m = _matroid(args)
    if args.action == "check":
        print("basis-exchange:", str(check_basis_exchange_axiom(m.bases)).lower())
        print("edge-criterion:", str(verify_edge_criterion(m)).lower())
    elif args.action == "tutte":
        t = tutte_polynomial(m)
        print(t)
        for i, j, c in t.triples():
            print(i, j, c)
    else:
        lat = lattice_of_flats(m)
        for f, r in zip(lat.flats, lat.ranks):
            print(r, _fmt_set(f))
    return 0


def cmd_linear_space(args) -> int:
    ls = linear_space(_load(args.file, "valuated_matroid"))
    if args.bounded:
        bc = bounded_complex(ls.cycle)
        for i in range(len(bc.cells)):
            pts = bc.polyhedron(i).points
            print(bc.cell_dim(i), " | ".join(format_vector(p) for p in pts))
        return 0
    _emit(ls.cycle, args, f"{len(ls.cycle.cells)} maximal cells")
    return 0


def cmd_bergman(args) -> int:
    fan = bergman_fan_from_flats(_matroid(args))
    _emit(fan, args, f"{len(fan.cells)} maximal cones")
    return 0


def cmd_intersect(args) -> int:
    x = _load(args.a, "cycle")
    y = _load(args.b, "cycle")
    z = stable_intersection(x, y, seed=args.seed)
    if not is_balanced(z):
        raise AssertionError("stable intersection produced an unbalanced cycle")
    _emit(z, args, f"{len(z.cells)} cells, total weight {z.total_weight()}")
    return 0


def cmd_degree(args) -> int:
    print(degree(_load(args.file, "cycle"), seed=args.seed))
    return 0


def cmd_auction(args) -> int:
    counts = competitive_equilibria(_load(args.file, "auction"))
    for b in sorted(counts):
        print(" ".join(map(str, b)) + f": {counts[b]}")
    return 0


def cmd_curve(args) -> int:
    h = hypersurface(_polynomial(args))
    if args.action == "genus":
        print(genus(h))
    elif args.action == "lengths":
        for i, (_, length) in enumerate(curve_edge_lengths(h)):
            print(f"{i}:{format_scalar(length)}")
    else:
        sk = skeleton(h)
        if args.output:
            Path(args.output).write_text(serialize.dumps(sk) + "\n")
        print(f"vertices {len(sk.nodes)}")
        print(f"edges {len(sk.edges)}")
        print("moduli", format_vector(sorted(l for *_, l in sk.edges)))
    return 0


def cmd_reproduce(args) -> int:
    results = run_checks(args.only)
    for r in results:
        print(f"{r.status.upper():4} {r.name}: {r.detail}")
    if any(r.status == "fail" for r in results):
        return EXIT_INTERNAL
    if any(r.status == "skip" for r in results):
        return EXIT_PRECONDITION
    return 0


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tropkit", description="Exact computations in tropical geometry.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def matrix_opts(q):
        q.add_argument("--matrix", help="JSON array of rows, entries int, 'p/q' or 'inf'")
        q.add_argument("--orientation", choices=sorted(ORIENTATIONS), default="min")
        q.add_argument("file", nargs="?", help="matrix envelope")
        q.add_argument("--output")

    def poly_opts(q):
        q.add_argument("--poly", help="polynomial text such as 'min(x0,x1,0)'")
        q.add_argument("file", nargs="?", help="polynomial envelope or min(...) text file, '-' for stdin")
        q.add_argument("--output")

    def matroid_opts(q):
        q.add_argument("file", nargs="?")
        q.add_argument("--fano", action="store_true")
        q.add_argument("--uniform", nargs=2, type=int, metavar=("K", "N"))
        q.add_argument("--output")

    q = sub.add_parser("tdet", help="tropical determinant and optimal permutation")
    matrix_opts(q)
    q.set_defaults(func=cmd_tdet)

    q = sub.add_parser("kleene", help="Kleene star (all shortest paths)")
    matrix_opts(q)
    q.set_defaults(func=cmd_kleene)

    q = sub.add_parser("hypersurface", help="weighted hypersurface of a Min polynomial")
    poly_opts(q)
    q.set_defaults(func=cmd_hypersurface)

    q = sub.add_parser("dual-subdivision", help="maximal cells of the dual subdivision")
    poly_opts(q)
    q.set_defaults(func=cmd_dual_subdivision)

    q = sub.add_parser("secondary-cone", help="secondary cone of a subdivision")
    q.add_argument("file")
    q.add_argument("--output")
    q.set_defaults(func=cmd_secondary_cone)

    q = sub.add_parser("cone-membership", help="classify a vector against a cone")
    q.add_argument("--cone")
    q.add_argument("--subdivision", help="use the secondary cone of this subdivision")
    q.add_argument("--vector", required=True, help="JSON array")
    q.set_defaults(func=cmd_cone_membership)

    q = sub.add_parser("tight-span", help="maximal bounded faces, labelled by maximal cells")
    q.add_argument("file")
    q.set_defaults(func=cmd_tight_span)

    q = sub.add_parser("matroid", help="matroid checks, Tutte polynomial, flats")
    q.add_argument("action", choices=["check", "tutte", "flats"])
    matroid_opts(q)
    q.set_defaults(func=cmd_matroid)

    q = sub.add_parser("linear-space", help="tropical linear space of a valuated matroid")
    q.add_argument("file")
    q.add_argument("--bounded", action="store_true", help="list the bounded faces instead")
    q.add_argument("--output")
    q.set_defaults(func=cmd_linear_space)

    q = sub.add_parser("bergman", help="Bergman fan from the lattice of flats")
    matroid_opts(q)
    q.set_defaults(func=cmd_bergman)

    q = sub.add_parser("intersect", help="stable intersection of two cycles")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--output")
    q.set_defaults(func=cmd_intersect)

    q = sub.add_parser("degree", help="degree of a cycle")
    q.add_argument("file", nargs="?", default="-")
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_degree)

    q = sub.add_parser("auction", help="product-mix auctions")
    q.add_argument("action", choices=["equilibria"])
    q.add_argument("file")
    q.set_defaults(func=cmd_auction)

    q = sub.add_parser("curve", help="plane curve invariants")
    q.add_argument("action", choices=["skeleton", "genus", "lengths"])
    poly_opts(q)
    q.set_defaults(func=cmd_curve)

    q = sub.add_parser("reproduce", help="recompute the bundled listing outputs")
    q.add_argument("--only", nargs="+", metavar="NAME", help=f"subset of: {', '.join(CHECKS)}")
    q.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, json.JSONDecodeError, PolynomialSyntaxError, serialize.EnvelopeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, TypeError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Exception as e:  # noqa: BLE001 - last-resort mapping to the documented exit code
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
