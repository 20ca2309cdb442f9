"""Exact double description for homogeneous cones over the integers.

``cone_generators`` turns {x : A x >= 0, B x = 0} into extreme rays plus a
lineality basis; feeding generators back in as inequalities yields the dual
cone, i.e. facets and equations. All arithmetic stays in ``int`` and every
vector is kept primitive, so entries stay small.
"""

from __future__ import annotations

from typing import Sequence

from .linalg import dot, integer_nullspace, primitive

IntVec = tuple[int, ...]


def _combine(s: int, x: IntVec, t: int, y: IntVec) -> IntVec:
    return primitive(tuple(s * a - t * b for a, b in zip(x, y)))


def cone_generators(
    inequalities: Sequence[IntVec], equations: Sequence[IntVec], dim: int
) -> tuple[list[IntVec], list[IntVec]]:
    """Extreme rays and lineality basis of {x : a.x >= 0, b.x = 0}.

    Rays are determined modulo the lineality space and are returned as
    primitive integer vectors. Deterministic in the input order.
    """
    lin: list[IntVec] = integer_nullspace(equations, dim) if equations else [
        tuple(int(i == j) for j in range(dim)) for i in range(dim)
    ]
    rays: list[IntVec] = []
    zeros: list[frozenset[int]] = []

    for idx, a in enumerate(inequalities):
        if not any(a):
            continue
        lvals = [dot(a, l) for l in lin]
        k = next((i for i, v in enumerate(lvals) if v != 0), None)
        if k is not None:
            l0, s = lin[k], lvals[k]
            if s < 0:
                l0, s = tuple(-x for x in l0), -s
            lin = [_combine(s, l, v, l0) for i, (l, v) in enumerate(zip(lin, lvals)) if i != k]
            new_rays, new_zeros = [], []
            for r, z in zip(rays, zeros):
                vr = dot(a, r)
                new_rays.append(_combine(s, r, vr, l0) if vr else r)
                new_zeros.append(z | {idx})
            new_rays.append(primitive(l0))
            new_zeros.append(frozenset(range(idx)))
            rays, zeros = new_rays, new_zeros
            continue

        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays = [rays[i] for i, v in enumerate(vals) if v >= 0]
        new_zeros = [zeros[i] | {idx} if vals[i] == 0 else zeros[i] for i in range(len(rays)) if vals[i] >= 0]
        if pos and neg:
            for p in pos:
                zp = zeros[p]
                for q in neg:
                    common = zp & zeros[q]
                    # combinatorial adjacency test
                    adjacent = True
                    for j, zj in enumerate(zeros):
                        if j != p and j != q and common <= zj:
                            adjacent = False
                            break
                    if adjacent:
                        new_rays.append(_combine(vals[p], rays[q], vals[q], rays[p]))
                        new_zeros.append(common | {idx})
        rays, zeros = new_rays, new_zeros

    return rays, lin


def cone_facets(
    generators: Sequence[IntVec], lineality: Sequence[IntVec], dim: int
) -> tuple[list[IntVec], list[IntVec]]:
    """Facet normals and equations of cone(generators) + span(lineality)."""
    if not generators and not lineality:
        # the zero cone: every coordinate vanishes
        eqs = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
        return [], eqs
    return cone_generators(list(generators), list(lineality), dim)
