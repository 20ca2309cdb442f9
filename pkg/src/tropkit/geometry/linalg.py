"""Exact linear algebra over Q and Z.

Vectors are tuples; rational work uses ``Fraction``, lattice work uses ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (sign kept)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def integerize(v: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    return primitive(tuple(int(x * den) for x in v))


def rref(rows: Iterable[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0} (rational)."""
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def integer_nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Rational nullspace with each basis vector scaled to a primitive integer vector."""
    return [integerize(v) for v in nullspace(rows, ncols)]


def solve(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of A x = b, or None if inconsistent."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug)
    if piv and piv[-1] == n:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return tuple(x)


def det(rows: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def project_out(v: Sequence, basis: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Orthogonal projection of v onto the complement of span(basis)."""
    if not basis:
        return tuple(Fraction(x) for x in v)
    # Gram system G c = B v
    g = [[Fraction(dot(a, b)) for b in basis] for a in basis]
    c = solve(g, [Fraction(dot(a, v)) for a in basis])
    out = [Fraction(x) for x in v]
    for ci, b in zip(c, basis):
        if ci:
            out = [x - ci * y for x, y in zip(out, b)]
    return tuple(out)


# ---------------------------------------------------------------------------
# integer lattices


def _column_echelon(a: list[list[int]], ncols: int) -> tuple[list[list[int]], list[list[int]], int]:
    """Unimodular column operations bringing ``a`` to column echelon form.

    Returns (a*U, U, rank); columns ``rank:`` of U span the integer kernel.
    """
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop(j, k, q):  # col_j -= q * col_k
        for row in a:
            row[j] -= q * row[k]
        for row in u:
            row[j] -= q * row[k]

    def swap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in u:
            row[j], row[k] = row[k], row[j]

    piv = 0
    for row in a:
        if piv == ncols:
            break
        for j in range(piv + 1, ncols):
            while row[j] != 0:
                if row[piv] == 0 or abs(row[j]) < abs(row[piv]):
                    swap(piv, j)
                    continue
                colop(j, piv, row[j] // row[piv])
        if row[piv] != 0:
            piv += 1
    return a, u, piv


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of the lattice {x in Z^n : A x = 0}. The result is saturated."""
    a = [list(map(int, r)) for r in rows]
    if not a:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    _, u, r = _column_echelon(a, ncols)
    return [tuple(u[i][j] for i in range(ncols)) for j in range(r, ncols)]


def saturated_basis(directions: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Integer basis of span(directions) ∩ Z^n."""
    if rank(directions) == 0:
        return []
    normals = integer_nullspace(directions, ncols)
    return integer_kernel(normals, ncols)


def hermite_rows(gens: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Row echelon basis of the lattice generated by ``gens`` (unimodular row ops)."""
    t = [list(map(int, c)) for c in zip(*gens)] if gens else []
    if not t:
        return []
    # row ops on gens == column ops on the transpose
    e, _, r = _column_echelon(t, len(gens))
    return [tuple(e[i][j] for i in range(ncols)) for j in range(r)]


def lattice_index(gens: Sequence[Sequence[int]], ncols: int) -> int:
    """[Z^n : lattice generated by gens]; raises if the gens do not span R^n."""
    h = hermite_rows(gens, ncols)
    if len(h) != ncols:
        raise ValueError("generators do not span a full-rank lattice")
    d = det(h)
    return abs(int(d))


def index_in_saturation(gens: Sequence[Sequence[int]], ncols: int) -> int:
    """[span(gens) ∩ Z^n : Z gens], e.g. the normalized volume of a lattice simplex."""
    h = hermite_rows(gens, ncols)
    if not h:
        return 1
    s = saturated_basis(h, ncols)
    # write each row of h in the basis s: h = C s
    pivots = rref(s)[1]
    st = [[Fraction(s[j][p]) for j in range(len(s))] for p in pivots]
    coeffs = []
    for row in h:
        c = solve(st, [Fraction(row[p]) for p in pivots])
        coeffs.append(c)
    return abs(int(det(coeffs)))


def lattice_length(v: Sequence) -> Fraction:
    """Length of a rational vector measured in units of its primitive lattice direction."""
    u = integerize(v)
    for x, y in zip(v, u):
        if y:
            return Fraction(x) / y
    return Fraction(0)
