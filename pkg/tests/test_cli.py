import json
import subprocess
import sys
from pathlib import Path

import pytest

from tropkit import cli, reproduce
from tropkit.serialize import dumps, fixture_path, loads
from tropkit.matroids import uniform_matroid

MATRIX = "[[1,2,3],[1,2,4],[1,0,1]]"


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tdet(capsys):
    assert run(capsys, "tdet", "--matrix", MATRIX)[:2] == (0, "4 <0 1 2>\n")


def test_tdet_from_file(capsys, tmp_path):
    assert run(capsys, "tdet", str(fixture_path("shortest_paths_matrix.json")))[:2] == (0, "4 <0 1 2>\n")


def test_kleene(capsys):
    code, out, _ = run(capsys, "kleene", "--matrix", MATRIX)
    assert code == 0 and out.split() == ["0", "2", "3", "1", "0", "4", "1", "0", "0"]


def test_hypersurface_pipes_into_degree(capsys, monkeypatch):
    code, out, _ = run(capsys, "hypersurface", "--poly", "min(x0,x1,0)")
    assert code == 0 and json.loads(out)["kind"] == "cycle"
    code, out, _ = run(capsys, "degree", stdin=out, monkeypatch=monkeypatch)
    assert (code, out) == (0, "1\n")


def test_hypersurface_output_file(capsys, tmp_path):
    target = tmp_path / "c.json"
    code, out, _ = run(capsys, "hypersurface", str(fixture_path("quartic_curve.json")), "--output", str(target))
    assert code == 0 and "maximal cells in R^2" in out
    # 12 rays and 18 bounded edges, all of weight one
    assert loads(target.read_text(), "cycle").total_weight() == 30


def test_dual_subdivision(capsys):
    code, out, _ = run(capsys, "dual-subdivision", str(fixture_path("cubic_surface.txt")))
    assert code == 0 and out.splitlines()[0] == "N_MAXIMAL_CELLS 27"


def test_secondary_cone_and_membership(capsys):
    sub = str(fixture_path("quartic_triangulation.json"))
    code, out, _ = run(capsys, "secondary-cone", sub)
    assert code == 0 and out.splitlines()[0] == "N_RAYS 12"
    code, out, _ = run(capsys, "cone-membership", "--subdivision", sub, "--vector", json.dumps([0] * 15))
    assert code == 0 and out.splitlines()[0] == "boundary"


def test_tight_span(capsys):
    code, out, _ = run(capsys, "tight-span", str(fixture_path("plucker_3_6.json")))
    assert code == 0 and sorted(len(l.split()) for l in out.splitlines()) == [2, 2, 4]


def test_matroid_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "matroid", "check", "--fano")
    assert out == "basis-exchange: true\nedge-criterion: true\n"
    code, out, _ = run(capsys, "matroid", "tutte", "--uniform", "2", "3")
    assert out.splitlines()[0] == "x^2 + x + y"
    f = tmp_path / "m.json"
    f.write_text(dumps(uniform_matroid(1, 2)))
    code, out, _ = run(capsys, "matroid", "flats", str(f))
    assert out.splitlines() == ["0 {}", "1 {0 1}"]


def test_linear_space_and_bergman(capsys):
    code, out, _ = run(capsys, "linear-space", str(fixture_path("plucker_3_6.json")), "--bounded")
    dims = [int(l.split()[0]) for l in out.splitlines()]
    assert code == 0 and sorted(dims) == [0] * 6 + [1] * 6 + [2]
    code, out, _ = run(capsys, "bergman", "--fano")
    assert code == 0 and len(json.loads(out)["payload"]["maximal_cells"]) == 21


def test_intersect(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "hypersurface", "--poly", "min(x0,x1,x2)", "--output", str(a))
    run(capsys, "hypersurface", "--poly", "min(x0-3,x1-1,x2)", "--output", str(b))
    code, out, _ = run(capsys, "intersect", str(a), str(b), "--seed", "3")
    cyc = loads(out, "cycle")
    assert code == 0 and cyc.total_weight() == 1
    assert cyc.cells[0].points == [(2, 0)]


def test_auction_fallback_to_bundled_fixture(capsys):
    code, out, _ = run(capsys, "auction", "equilibria", "examples/tran_yu_ex2.json")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 9 and "1 1: 0" in lines
    assert sum(int(l.split(": ")[1]) >= 1 for l in lines) == 8


def test_curve(capsys):
    q = str(fixture_path("quartic_curve.json"))
    assert run(capsys, "curve", "genus", q)[1] == "3\n"
    out = run(capsys, "curve", "skeleton", q)[1]
    assert out.splitlines() == ["vertices 4", "edges 6", "moduli 1/3 1/3 1/3 4/3 4/3 4/3"]
    assert len(run(capsys, "curve", "lengths", q)[1].splitlines()) == 30


@pytest.mark.parametrize(
    "argv, code",
    [
        (["nothing"], 1),
        (["tdet", "--matrix", "[[1,2"], 1),
        (["hypersurface", "--poly", "min(x0,,x1)"], 1),
        (["hypersurface", "--poly", "max(x0,x1)"], 1),
        (["tdet", "--matrix", "[[1,2,3],[4,5,6]]"], 2),
        (["tdet", "--matrix", "[[0.5]]"], 2),
        (["kleene", "--matrix", "[[0,-1],[0,0]]"], 2),
        (["degree", "/definitely/missing.json"], 2),
        (["tdet"], 1),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code and err.startswith("error")


def test_unbalanced_degree_is_a_precondition_error(capsys, tmp_path):
    env = {
        "kind": "cycle",
        "version": "1",
        "payload": {
            "n": 2,
            "vertices": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
            "lineality": [],
            "maximal_cells": [[0, 1], [0, 2]],
            "weights": [1, 1],
        },
    }
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(env))
    assert run(capsys, "degree", str(f))[0] == 2


def test_internal_errors_exit_3(capsys, monkeypatch):
    def boom(args):
        raise RuntimeError("broken invariant")

    monkeypatch.setattr(cli, "cmd_tdet", boom)
    assert run(capsys, "tdet", "--matrix", MATRIX)[0] == 3


def test_reproduce_only(capsys):
    code, out, _ = run(capsys, "reproduce", "--only", "listing6")
    assert code == 0 and out.startswith("PASS listing6")
    assert len(out.splitlines()) == 1


def test_reproduce_unknown_and_missing(capsys, monkeypatch):
    code, out, _ = run(capsys, "reproduce", "--only", "listing1", "nothere")
    assert code == 2 and out.splitlines()[1].startswith("SKIP nothere")

    def missing(name):
        return Path("/nonexistent") / name

    monkeypatch.setattr(reproduce, "fixture_path", missing)
    monkeypatch.setattr(reproduce, "load_fixture", lambda name, kind=None: missing(name).read_text())
    code, out, _ = run(capsys, "reproduce", "--only", "listing6", "cubic")
    assert code == 2 and all(l.startswith("SKIP") for l in out.splitlines())


def test_reproduce_failure_exits_3(capsys, monkeypatch):
    def wrong():
        raise AssertionError("mismatch")

    monkeypatch.setitem(reproduce.CHECKS, "listing1", wrong)
    code, out, _ = run(capsys, "reproduce", "--only", "listing1")
    assert code == 3 and out.startswith("FAIL listing1")


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "tropkit.cli", *argv], capture_output=True, check=False)


def test_same_seed_gives_identical_bytes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    _cli("hypersurface", "--poly", "min(2*x0,x0+x1+1,2*x1,x0+x2+1,x1+x2+1,2*x2)", "--output", str(a))
    _cli("hypersurface", "--poly", "min(x0,x1+2,x2)", "--output", str(b))
    first = _cli("intersect", str(a), str(b), "--seed", "11")
    second = _cli("intersect", str(a), str(b), "--seed", "11")
    assert first.returncode == 0 and first.stdout == second.stdout and first.stdout
