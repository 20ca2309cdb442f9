"""Product-mix auctions: demand sets and competitive equilibria.

Each agent's utility becomes a Min polynomial whose monomials are the
bundles with a homogenizing coordinate prepended. Equilibrium at an
aggregate bundle a exists iff a lies in a cell of the dual subdivision of
the product polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .geometry.subdivision import PointConfiguration, RegularSubdivision, regular_subdivision
from .polysurf import TropicalPolynomial
from .rational import to_rational

Bundle = tuple[int, ...]


@dataclass(frozen=True)
class AgentUtility:
    bundles: tuple[Bundle, ...]
    utilities: tuple[Fraction, ...]

    def __init__(self, bundles: Sequence[Sequence[int]], utilities: Sequence):
        bs = tuple(tuple(int(x) for x in b) for b in bundles)
        us = tuple(to_rational(u) for u in utilities)
        if not bs:
            raise ValueError("an agent needs at least one bundle")
        if len(bs) != len(us):
            raise ValueError("one utility per bundle")
        if len(set(bs)) != len(bs):
            raise ValueError("bundles must be distinct")
        if len({len(b) for b in bs}) != 1:
            raise ValueError("bundles must have the same number of goods")
        if any(x < 0 for b in bs for x in b):
            raise ValueError("bundle quantities must be nonnegative")
        object.__setattr__(self, "bundles", bs)
        object.__setattr__(self, "utilities", us)

    @property
    def goods(self) -> int:
        return len(self.bundles[0])

    def profit(self, bundle: Bundle, prices: Sequence[Fraction]) -> Fraction:
        u = self.utilities[self.bundles.index(bundle)]
        return u - sum(p * a for p, a in zip(prices, bundle))


@dataclass(frozen=True)
class AuctionInstance:
    goods: int
    agents: tuple[AgentUtility, ...]

    def __init__(self, goods: int, agents: Sequence[AgentUtility]):
        agents = tuple(agents)
        if not agents:
            raise ValueError("an auction needs at least one agent")
        if any(a.goods != goods for a in agents):
            raise ValueError(f"every bundle must have {goods} goods")
        object.__setattr__(self, "goods", goods)
        object.__setattr__(self, "agents", agents)


def _prices(p: Sequence, g: int) -> tuple[Fraction, ...]:
    if len(p) != g:
        raise ValueError(f"price vector must have {g} entries")
    return tuple(to_rational(x) for x in p)


def demand_set(u: AgentUtility, p: Sequence) -> frozenset[Bundle]:
    """Bundles maximising u(a) - p.a."""
    p = _prices(p, u.goods)
    profits = [u.profit(b, p) for b in u.bundles]
    best = max(profits)
    return frozenset(b for b, v in zip(u.bundles, profits) if v == best)


def aggregate_demand(inst: AuctionInstance, p: Sequence) -> frozenset[Bundle]:
    p = _prices(p, inst.goods)
    sets = [demand_set(a, p) for a in inst.agents]
    return reduce(
        lambda acc, s: frozenset(tuple(x + y for x, y in zip(a, b)) for a in acc for b in s),
        sets[1:],
        sets[0],
    )


def agent_polynomial(u: AgentUtility) -> TropicalPolynomial:
    """Min polynomial with coefficient -u(a) on the homogenized bundle (D - |a|, a)."""
    top = max(sum(b) for b in u.bundles)
    return TropicalPolynomial(
        u.goods + 1, [((top - sum(b),) + b, -c) for b, c in zip(u.bundles, u.utilities)]
    )


def aggregate_polynomial(inst: AuctionInstance) -> TropicalPolynomial:
    return reduce(lambda f, g: f * g, (agent_polynomial(a) for a in inst.agents))


def aggregate_subdivision(inst: AuctionInstance) -> tuple[list[Bundle], RegularSubdivision]:
    """Dual subdivision of the product polynomial on the dehomogenized bundles."""
    f = aggregate_polynomial(inst)
    bundles = [e[1:] for e in f.monomials]
    return bundles, regular_subdivision(PointConfiguration(bundles), f.coefficients)


def competitive_equilibria(inst: AuctionInstance) -> dict[Bundle, int]:
    """Number of maximal dual cells containing each aggregate bundle.

    A bundle counts for a cell when its lifted point lies on the cell's lower
    face, so bundles lifted strictly above the lower envelope get 0.
    """
    bundles, sub = aggregate_subdivision(inst)
    return {b: len(sub.cells_containing(i)) for i, b in enumerate(bundles)}


def equilibrium_bundles(inst: AuctionInstance) -> list[Bundle]:
    return sorted(b for b, c in competitive_equilibria(inst).items() if c > 0)
