#!/usr/bin/env python3
"""Rays of the secondary cone of the quartic's triangulation.

For each ray: the number of maximal cells of the subdivision it induces.
For each facet: its value on the quartic's coefficient vector.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from tropkit.geometry.subdivision import coarsest_subdivision_of_ray, cone_membership, dual_description, secondary_cone
from tropkit.rational import format_scalar, format_vector
from tropkit.serialize import load_fixture


@dataclass
class Config:
    subdivision: str = "quartic_triangulation.json"
    polynomial: str = "quartic_curve.json"


def main(cfg: Config) -> None:
    sub = load_fixture(cfg.subdivision, "subdivision")
    cone = dual_description(secondary_cone(sub))
    print(f"{len(cone.rays)} rays, lineality dimension {len(cone.lineality)}")
    for r in cone.rays:
        cells = coarsest_subdivision_of_ray(sub.config, r).n_maximal_cells
        print(f"  {cells} cells  [{format_vector(r)}]")
    f = load_fixture(cfg.polynomial, "polynomial")
    verdict, products, residuals = cone_membership(cone, f.coefficients)
    print(f"coefficients: {verdict.value}")
    print("facet values:", " ".join(format_scalar(p) for p in sorted(products)))
    print("span residuals:", " ".join(format_scalar(p) for p in residuals) or "none")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--subdivision", default=Config.subdivision)
    ap.add_argument("--polynomial", default=Config.polynomial)
    a = ap.parse_args()
    main(Config(a.subdivision, a.polynomial))
