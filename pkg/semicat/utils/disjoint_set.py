"""Array-backed disjoint sets over ``0..size-1`` with a running class count."""

from __future__ import annotations


class DisjointSet:
    """Union by size with path halving.

    Args:
        size: Number of elements
    """

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.size = [1] * size
        self.count = size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        """Merge the classes of ``x`` and ``y``; return True if they were distinct."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        self.count -= 1
        return True

    def classes(self) -> list[tuple[int, ...]]:
        """Return the classes as sorted tuples, ordered by least member."""
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(tuple(members) for members in groups.values())
