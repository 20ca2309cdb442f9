#!/usr/bin/env python3
"""Triple self-intersection of surfaces in the 3-torus against lattice volumes.

A degree-d surface meets itself three times in d^3 points counted with
multiplicity, the normalized volume of d times the standard simplex.
"""

from __future__ import annotations

import argparse
import itertools
import random
import time
from dataclasses import dataclass

from tropkit.cycles import DisplacementConfig, stable_intersection
from tropkit.geometry.subdivision import normalized_volume
from tropkit.polysurf import TropicalPolynomial, hypersurface, is_smooth


@dataclass
class Config:
    degrees: tuple[int, ...] = (1, 2, 3)
    seed: int = 0
    displacement_seed: int = 0


def random_surface(d: int, rng: random.Random) -> TropicalPolynomial:
    mons = [e for e in itertools.product(range(d + 1), repeat=4) if sum(e) == d]
    # a convex lift plus small noise; the count holds for non-smooth surfaces too
    return TropicalPolynomial.from_lists(mons, [7 * sum(x * x for x in e) + rng.randint(-3, 3) for e in mons])


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    disp = DisplacementConfig(seed=cfg.displacement_seed)
    bad = 0
    for d in cfg.degrees:
        h = hypersurface(random_surface(d, rng))
        t = time.perf_counter()
        hh = stable_intersection(h.cycle, h.cycle, config=disp)
        hhh = stable_intersection(hh, h.cycle, config=disp)
        dt = time.perf_counter() - t
        vol = normalized_volume([(0, 0, 0), (d, 0, 0), (0, d, 0), (0, 0, d)])
        ok = hhh.total_weight() == vol
        bad += not ok
        print(f"d={d} smooth={is_smooth(h)} H.H.H={hhh.total_weight()} volume={vol} {'ok' if ok else 'MISMATCH'} ({dt:.1f}s)")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degrees", type=int, nargs="+", default=list(Config.degrees))
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    raise SystemExit(main(Config(tuple(a.degrees), a.seed)))
