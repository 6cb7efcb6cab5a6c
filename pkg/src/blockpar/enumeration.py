"""Streaming enumeration of partitioned orders and of their two quotients.

``enum_bp``      one item per partitioned order
``enum_bp0``     one representative per class of equal block-sequence images
``enum_bpstar``  one representative per class of images equal up to rotation

Items are grouped by generating integer partition, partitions taken in
:func:`~blockpar.partitions.enum_partitions` order. Within a partition,
combinations and permutations advance lexicographically. The output of a
full stream is the concatenation of its per-partition shards, so shards can
be produced independently and merged in partition order.
"""

from __future__ import annotations

from itertools import islice, permutations, product
from typing import Iterator, Optional

from ._backend import get_kernels
from .errors import EmptyInputError, RefusalError
from .modes import PartitionedOrder, canonical_bp, canonical_bp0, canonical_bpstar
from .partitions import IntegerPartition, enum_partitions

__all__ = [
    "ModeStream",
    "enum_bp",
    "enum_bp0",
    "enum_bpstar",
    "enum_modes",
    "oracle_enum_bp",
    "oracle_quotient",
    "ORACLE_MAX_N",
]

ORACLE_MAX_N = 7


def _slicer(parts: tuple[int, ...]):
    bounds = []
    start = 0
    for j in parts:
        bounds.append((start, start + j))
        start += j
    return bounds


class ModeStream:
    """Single-consumer stream of partitioned orders for one family.

    ``partition`` restricts the stream to one shard: the 0-based index of a
    partition in enumeration order. ``limit`` truncates the stream.
    Iterating yields :class:`PartitionedOrder` values; :meth:`items` also
    yields the generating partition, and :attr:`partition_in_progress`
    holds it during plain iteration.
    """

    def __init__(
        self,
        n: int,
        variant: str,
        partition: Optional[int] = None,
        limit: Optional[int] = None,
        backend: Optional[str] = None,
    ):
        if n < 1:
            raise EmptyInputError(f"n must be >= 1, got {n}")
        if limit is not None and limit < 0:
            raise ValueError("limit must be >= 0")
        self.n = n
        self.variant = variant
        self.limit = limit
        self._kernels = get_kernels(backend)
        parts = list(enum_partitions(n))
        if partition is not None:
            if not 0 <= partition < len(parts):
                raise IndexError(f"partition index {partition} out of range 0..{len(parts) - 1}")
            parts = [parts[partition]]
        self.partitions: list[IntegerPartition] = parts
        self.partition_in_progress: Optional[IntegerPartition] = None
        self._consumed = False

    def _claim(self):
        if self._consumed:
            raise RuntimeError("a ModeStream can be consumed only once")
        self._consumed = True

    def _raw(self) -> Iterator[tuple[IntegerPartition, tuple[int, ...]]]:
        for p in self.partitions:
            self.partition_in_progress = p
            for layout in self._kernels.LayoutEnumerator(p.parts, self.variant):
                yield p, layout

    def layouts(self) -> Iterator[tuple[IntegerPartition, tuple[int, ...]]]:
        """Flat layouts: the o-blocks concatenated, shortest first."""
        self._claim()
        return islice(self._raw(), self.limit)

    def items(self) -> Iterator[tuple[IntegerPartition, PartitionedOrder]]:
        n = self.n
        trusted = PartitionedOrder._trusted
        bounds = {}
        for p, layout in self.layouts():
            b = bounds.get(p.parts)
            if b is None:
                b = bounds[p.parts] = _slicer(p.parts)
            yield p, trusted(tuple(layout[s:e] for s, e in b), n)

    def __iter__(self) -> Iterator[PartitionedOrder]:
        return (mu for _, mu in self.items())

    def count(self) -> int:
        """Run the enumeration to the end and return the number of items.

        Items are produced by the kernel but never materialised as Python
        objects.
        """
        self._claim()
        if self.limit is None:
            total = 0
            for p in self.partitions:
                self.partition_in_progress = p
                total += self._kernels.LayoutEnumerator(p.parts, self.variant).count()
            return total
        return sum(1 for _ in islice(self._raw(), self.limit))


def enum_bp(n: int, **kwargs) -> ModeStream:
    return ModeStream(n, "bp", **kwargs)


def enum_bp0(n: int, **kwargs) -> ModeStream:
    return ModeStream(n, "bp0", **kwargs)


def enum_bpstar(n: int, **kwargs) -> ModeStream:
    return ModeStream(n, "bpstar", **kwargs)


def enum_modes(n: int, cls: str, **kwargs) -> ModeStream:
    if cls not in ("bp", "bp0", "bpstar"):
        raise ValueError(f"cannot enumerate class {cls!r}")
    return ModeStream(n, cls, **kwargs)


# -- brute-force oracles ----------------------------------------------------


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[head]] + part
        for k in range(len(part)):
            yield part[:k] + [[head] + part[k]] + part[k + 1:]


def _guard(n: int) -> None:
    if n < 1:
        raise EmptyInputError(f"n must be >= 1, got {n}")
    if n > ORACLE_MAX_N:
        raise RefusalError(f"brute-force oracle refuses n={n} > {ORACLE_MAX_N}")


def oracle_enum_bp(n: int) -> set[PartitionedOrder]:
    """Every partitioned order of ``n`` automata, by brute force: each set
    partition of the automata with every ordering of every part."""
    _guard(n)
    out = set()
    for blocks in _set_partitions(list(range(n))):
        for orders in product(*(permutations(b) for b in blocks)):
            out.add(canonical_bp(PartitionedOrder(orders, n)))
    return out


def oracle_quotient(n: int, relation: str) -> set:
    """Distinct class keys of the brute-force set under ``"eq0"`` or ``"star"``."""
    keys = {"eq0": canonical_bp0, "star": canonical_bpstar}
    if relation not in keys:
        raise ValueError(f"relation must be 'eq0' or 'star', got {relation!r}")
    key = keys[relation]
    return {key(mu) for mu in oracle_enum_bp(n)}
