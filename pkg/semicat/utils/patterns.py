"""Equality patterns of tuples (the relation natural_{X,n})."""

from __future__ import annotations

from collections.abc import Hashable, Sequence


def equality_pattern(values: Sequence[Hashable]) -> tuple[int, ...]:
    """Label each position by the first-occurrence rank of its value.

    ``(a, b, a, c)`` and ``(x, y, x, z)`` both give ``(0, 1, 0, 2)``.
    """
    first: dict[Hashable, int] = {}
    return tuple(first.setdefault(value, len(first)) for value in values)


def natural_equivalent(left: Sequence[Hashable], right: Sequence[Hashable]) -> bool:
    """Positions agree in ``left`` exactly when they agree in ``right``."""
    return len(left) == len(right) and equality_pattern(left) == equality_pattern(right)

