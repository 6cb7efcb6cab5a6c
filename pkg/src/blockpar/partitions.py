"""Integer partitions and the part-size statistics used by the counting formulas.

Partitions are produced as ascending compositions (Kelleher's ``accel_asc``),
which yields them in lexicographic order of the nondecreasing part sequence::

    >>> [p.parts for p in enum_partitions(4)]
    [(1, 1, 1, 1), (1, 1, 2), (1, 3), (2, 2), (4,)]
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import EmptyInputError

__all__ = [
    "IntegerPartition",
    "PartitionStats",
    "enum_partitions",
    "part_stats",
    "partition_count",
]


@dataclass(frozen=True)
class PartitionStats:
    """Statistics of one partition.

    ``m`` is dense: ``m[j]`` is the multiplicity of part size ``j`` for
    ``0 <= j <= d``, with ``m[0] == 0`` so sizes index directly.
    """

    d: int
    m: tuple[int, ...]
    lcm: int

    def multiplicity(self, j: int) -> int:
        return self.m[j] if 0 <= j <= self.d else 0

    def sizes(self) -> list[int]:
        """Part sizes that actually occur, ascending."""
        return [j for j in range(1, self.d + 1) if self.m[j]]


@dataclass(frozen=True, order=True)
class IntegerPartition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise EmptyInputError("a partition needs at least one part")
        if any(not isinstance(x, int) or x < 1 for x in parts):
            raise ValueError(f"parts must be positive integers: {parts}")
        if any(a > b for a, b in zip(parts, parts[1:])):
            parts = tuple(sorted(parts))
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @cached_property
    def stats(self) -> PartitionStats:
        return part_stats(self)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def _accel_asc(n: int) -> Iterator[tuple[int, ...]]:
    # Kelleher & O'Sullivan, "Generating all partitions: a comparison of two
    # encodings", algorithm AccelAsc.
    a = [0] * (n + 1)
    k = 1
    y = n - 1
    while k != 0:
        x = a[k - 1] + 1
        k -= 1
        while 2 * x <= y:
            a[k] = x
            y -= x
            k += 1
        ell = k + 1
        while x <= y:
            a[k] = x
            a[ell] = y
            yield tuple(a[: k + 2])
            x += 1
            y -= 1
        a[k] = x + y
        y = x + y - 1
        yield tuple(a[: k + 1])


def enum_partitions(n: int) -> Iterator[IntegerPartition]:
    """Yield every partition of ``n`` once, lexicographically ascending."""
    if n < 1:
        raise EmptyInputError(f"n must be >= 1, got {n}")
    for parts in _accel_asc(n):
        yield IntegerPartition(parts)


def part_stats(p: IntegerPartition) -> PartitionStats:
    counts = Counter(p.parts)
    d = max(counts)
    m = tuple(counts.get(j, 0) for j in range(d + 1))
    return PartitionStats(d=d, m=m, lcm=math.lcm(*counts))


def partition_count(n: int) -> int:
    """p(n) by the standard coin-change recurrence."""
    if n < 0:
        return 0
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]
