"""Shared hypothesis strategies."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from tropkit.rational import INF

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
extended = st.one_of(small_fractions, small_fractions, st.just(INF))


def square_matrices(d: int, entries=small_fractions):
    return st.lists(st.lists(entries, min_size=d, max_size=d), min_size=d, max_size=d)


heights = st.integers(min_value=-6, max_value=6).map(Fraction)
