"""Tropical semiring scalars and matrices.

``MinNumber`` works in (R ∪ {∞}, min, +) and ``MaxNumber`` in (R ∪ {−∞}, max, +).
The orientation is carried by the class, so combining the two raises
``TypeError`` instead of silently picking one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Iterable, Sequence

from .rational import INF, NEG_INF, Infinity, format_scalar, parse_scalar


class NegativeCycle(ValueError):
    """The closure diverges: some directed cycle has negative (Min) weight."""


class TropicalNumber:
    __slots__ = ("value",)
    orientation: ClassVar[str] = ""
    zero_value: ClassVar[Infinity]

    def __init__(self, value=None):
        if value is None:
            value = self.zero_value
        v = parse_scalar(value.value if isinstance(value, TropicalNumber) else value)
        if isinstance(v, Infinity) and v != self.zero_value:
            raise ValueError(f"{v} is not an element of the {self.orientation} semiring")
        self.value = v

    @classmethod
    def zero(cls):
        """Neutral element of ⊕."""
        return cls(cls.zero_value)

    @classmethod
    def one(cls):
        """Neutral element of ⊙."""
        return cls(0)

    def is_zero(self) -> bool:
        return isinstance(self.value, Infinity)

    def _check(self, other) -> TropicalNumber:
        if isinstance(other, TropicalNumber):
            if type(other) is not type(self):
                raise TypeError("mixing Min and Max tropical numbers is not defined")
            return other
        return type(self)(other)

    def __add__(self, other):
        other = self._check(other)
        return type(self)(self._pick(self.value, other.value))

    __radd__ = __add__

    def __mul__(self, other):
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return self.zero()
        return type(self)(self.value + other.value)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative tropical powers need a finite base")
        if k == 0:
            return self.one()
        if self.is_zero():
            return self.zero()
        return type(self)(self.value * k)

    def __eq__(self, other) -> bool:
        if isinstance(other, TropicalNumber):
            return type(other) is type(self) and other.value == self.value
        try:
            return self.value == parse_scalar(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.orientation, self.value))

    def __str__(self) -> str:
        return format_scalar(self.value)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


class MinNumber(TropicalNumber):
    __slots__ = ()
    orientation = "Min"
    zero_value = INF

    @staticmethod
    def _pick(a, b):
        return min(a, b)


class MaxNumber(TropicalNumber):
    __slots__ = ()
    orientation = "Max"
    zero_value = NEG_INF

    @staticmethod
    def _pick(a, b):
        return max(a, b)


ORIENTATIONS = {"min": MinNumber, "max": MaxNumber}


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation")

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __str__(self) -> str:
        return "<" + " ".join(map(str, self.images)) + ">"

    @classmethod
    def identity(cls, d: int) -> Permutation:
        return cls(tuple(range(d)))


class TropicalMatrix:
    """Dense row-major matrix over one tropical semiring."""

    __slots__ = ("rows", "cols", "entries", "scalar")

    def __init__(self, data: Sequence[Sequence], scalar: type[TropicalNumber] = MinNumber):
        data = [list(r) for r in data]
        if not data or not data[0]:
            raise ValueError("a tropical matrix needs at least one row and one column")
        if len({len(r) for r in data}) != 1:
            raise ValueError("ragged matrix rows")
        self.scalar = scalar
        self.rows, self.cols = len(data), len(data[0])
        entries = []
        for r in data:
            for x in r:
                if isinstance(x, TropicalNumber) and type(x) is not scalar:
                    raise TypeError("mixing Min and Max tropical numbers is not defined")
                entries.append(x if isinstance(x, TropicalNumber) else scalar(x))
        self.entries = tuple(entries)

    @classmethod
    def identity(cls, d: int, scalar: type[TropicalNumber] = MinNumber) -> TropicalMatrix:
        z = scalar.zero_value
        return cls([[0 if i == j else z for j in range(d)] for i in range(d)], scalar)

    def __getitem__(self, ij: tuple[int, int]) -> TropicalNumber:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[TropicalNumber, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self) -> list[list]:
        return [[x.value for x in self.row(i)] for i in range(self.rows)]

    def _same_kind(self, other: TropicalMatrix) -> None:
        if not isinstance(other, TropicalMatrix):
            raise TypeError("expected a tropical matrix")
        if other.scalar is not self.scalar:
            raise TypeError("mixing Min and Max tropical matrices is not defined")

    def __add__(self, other: TropicalMatrix) -> TropicalMatrix:
        self._same_kind(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"cannot add {self.rows}x{self.cols} and {other.rows}x{other.cols}")
        return TropicalMatrix(
            [[self[i, j] + other[i, j] for j in range(self.cols)] for i in range(self.rows)], self.scalar
        )

    def __mul__(self, other: TropicalMatrix) -> TropicalMatrix:
        self._same_kind(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            line = []
            for j in range(other.cols):
                acc = self.scalar.zero()
                for k in range(self.cols):
                    acc = acc + r[k] * other[k, j]
                line.append(acc)
            out.append(line)
        return TropicalMatrix(out, self.scalar)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TropicalMatrix)
            and other.scalar is self.scalar
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.scalar.orientation, self.rows, self.entries))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))

    def __repr__(self) -> str:
        return f"TropicalMatrix({self.to_lists()!r}, {self.scalar.__name__})"


def kleene_star(a: TropicalMatrix) -> TropicalMatrix:
    """Closure I ⊕ A ⊕ A⊙A ⊕ ... computed by Floyd–Warshall."""
    if a.rows != a.cols:
        raise ValueError("Kleene star needs a square matrix")
    d = a.rows
    s = a.scalar
    m = [[a[i, j] for j in range(d)] for i in range(d)]
    for i in range(d):
        m[i][i] = m[i][i] + s.one()
    for k in range(d):
        for i in range(d):
            mik = m[i][k]
            if mik.is_zero():
                continue
            for j in range(d):
                m[i][j] = m[i][j] + mik * m[k][j]
        for i in range(d):
            if m[i][i] != s.one():
                raise NegativeCycle(f"closure diverges: cycle through node {i} improves on 0")
    return TropicalMatrix(m, s)


# ---------------------------------------------------------------------------
# tropical determinant as an assignment problem


def _assignment(cost: list[list[Fraction]]) -> tuple[Fraction, list[int]]:
    """Minimum-cost perfect matching (Hungarian method with potentials), O(d^3)."""
    n = len(cost)
    u = [Fraction(0)] * (n + 1)
    v = [Fraction(0)] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row assigned to column j (1-based)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [None] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta, j1 = None, 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                if minv[j] is None or cur < minv[j]:
                    minv[j], way[j] = cur, j0
                if delta is None or minv[j] < delta:
                    delta, j1 = minv[j], j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    perm = [0] * n
    for j in range(1, n + 1):
        perm[match[j] - 1] = j - 1
    return sum(cost[i][perm[i]] for i in range(n)), perm


def _min_cost_matrix(a: TropicalMatrix) -> tuple[list[list[Fraction]], Fraction]:
    """Finite cost matrix for a Min problem; tropical zeros become a prohibitive M."""
    sign = 1 if a.scalar is MinNumber else -1
    finite = [sign * x.value for x in a.entries if not x.is_zero()]
    spread = max((abs(x) for x in finite), default=Fraction(0))
    big = 2 * a.rows * spread + 1
    cost = [[big if x.is_zero() else sign * x.value for x in a.row(i)] for i in range(a.rows)]
    return cost, big


def tdet(a: TropicalMatrix) -> tuple[TropicalNumber, Permutation | None]:
    """Tropical determinant and the lexicographically smallest optimal permutation.

    Returns the tropical zero and ``None`` when every permutation meets a
    zero entry.
    """
    if a.rows != a.cols:
        raise ValueError("the tropical determinant needs a square matrix")
    d = a.rows
    cost, big = _min_cost_matrix(a)
    best, perm = _assignment(cost)
    if any(cost[i][perm[i]] == big for i in range(d)):
        return a.scalar.zero(), None
    # fix rows one at a time to the smallest column that keeps the optimum
    chosen: list[int] = []
    free = list(range(d))
    for i in range(d):
        for j in sorted(free):
            if cost[i][j] == big:
                continue
            rest = [c for c in free if c != j]
            if rest:
                sub = [[cost[r][c] for c in rest] for r in range(i + 1, d)]
                val, _ = _assignment(sub)
            else:
                val = Fraction(0)
            if sum(cost[r][chosen[r]] for r in range(i)) + cost[i][j] + val == best:
                chosen.append(j)
                free.remove(j)
                break
    value = best if a.scalar is MinNumber else -best
    return a.scalar(value), Permutation(tuple(chosen))


def tdet_bruteforce(a: TropicalMatrix) -> TropicalNumber:
    """Tropical Leibniz formula by enumerating all permutations."""
    acc = a.scalar.zero()
    for p in itertools.permutations(range(a.rows)):
        term = a.scalar.one()
        for i, j in enumerate(p):
            term = term * a[i, j]
        acc = acc + term
    return acc


def matrix_from_json(rows: Iterable[Iterable], orientation: str = "min") -> TropicalMatrix:
    return TropicalMatrix([[parse_scalar(x) for x in r] for r in rows], ORIENTATIONS[orientation.lower()])
