"""Update modes: partitioned orders, block sequences and the relations between them.

Automata are numbered ``0..n-1``. A :class:`PartitionedOrder` is a set of
o-blocks (ordered, pairwise disjoint sequences covering every automaton);
a :class:`BlockSequence` is an ordered sequence of blocks (sets). The
rewriting :func:`phi` turns the former into the latter.

Text grammar, whitespace-insensitive::

    {(0),(2,1)}     partitioned order
    ({1},{0,2})     block sequence
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    InvalidModeError,
    MismatchedSizeError,
    ModeSyntaxError,
    PreconditionError,
)
from .partitions import IntegerPartition

__all__ = [
    "PartitionedOrder",
    "BlockSequence",
    "MatrixRepresentation",
    "phi",
    "is_ordered_partition",
    "in_intersection",
    "phi_section",
    "matrix_repr",
    "equiv0",
    "equiv_star",
    "shift",
    "canonical_bp",
    "canonical_bp0",
    "canonical_bpstar",
    "update_counts",
    "first_update_times",
    "parse_mode",
    "parse_partitioned_order",
    "parse_block_sequence",
]


def _oblock_key(seq: tuple[int, ...]):
    return (len(seq), seq[0])


class PartitionedOrder:
    """A block-parallel update mode.

    O-blocks are stored in canonical order (by length, then first element),
    so two instances are equal exactly when they are the same set of o-blocks.
    """

    __slots__ = ("oblocks", "n", "_phi")

    def __init__(self, oblocks: Iterable[Sequence[int]], n: Optional[int] = None):
        blocks = [tuple(int(i) for i in ob) for ob in oblocks]
        if not blocks:
            raise InvalidModeError("a partitioned order needs at least one o-block")
        seen: set[int] = set()
        for ob in blocks:
            if not ob:
                raise InvalidModeError("o-blocks must be nonempty")
            for i in ob:
                if i in seen:
                    raise InvalidModeError(f"automaton {i} appears twice")
                seen.add(i)
        size = len(seen)
        if n is None:
            n = size
        if size != n or seen != set(range(n)):
            raise InvalidModeError(
                f"o-blocks must cover exactly 0..{n - 1}, got {sorted(seen)}"
            )
        blocks.sort(key=_oblock_key)
        self.oblocks = tuple(blocks)
        self.n = n
        self._phi = None

    @classmethod
    def _trusted(cls, oblocks: tuple[tuple[int, ...], ...], n: int) -> "PartitionedOrder":
        # caller guarantees validity and canonical order
        self = cls.__new__(cls)
        self.oblocks = oblocks
        self.n = n
        self._phi = None
        return self

    @classmethod
    def parse(cls, text: str) -> "PartitionedOrder":
        return parse_partitioned_order(text)

    @property
    def partition(self) -> IntegerPartition:
        return IntegerPartition(tuple(len(ob) for ob in self.oblocks))

    @property
    def period(self) -> int:
        return math.lcm(*(len(ob) for ob in self.oblocks))

    def __eq__(self, other):
        if not isinstance(other, PartitionedOrder):
            return NotImplemented
        return self.n == other.n and self.oblocks == other.oblocks

    def __hash__(self):
        return hash(self.oblocks)

    def __lt__(self, other):
        return self.oblocks < other.oblocks

    def __str__(self):
        return "{" + ",".join("(" + ",".join(map(str, ob)) + ")" for ob in self.oblocks) + "}"

    def __repr__(self):
        return f"PartitionedOrder({self})"

    def to_json(self) -> dict:
        return {"oblocks": [list(ob) for ob in self.oblocks]}


class BlockSequence:
    """An ordered sequence of nonempty blocks whose union is ``0..n-1``.

    Blocks may overlap; use :func:`is_ordered_partition` to test for a
    block-sequential mode.
    """

    __slots__ = ("blocks", "n")

    def __init__(self, blocks: Iterable[Iterable[int]], n: Optional[int] = None):
        bs = tuple(tuple(sorted(set(int(i) for i in b))) for b in blocks)
        if not bs:
            raise InvalidModeError("a block sequence needs at least one block")
        if any(not b for b in bs):
            raise InvalidModeError("blocks must be nonempty")
        union = set().union(*bs)
        if n is None:
            n = len(union)
        if union != set(range(n)):
            raise InvalidModeError(
                f"blocks must cover exactly 0..{n - 1}, got {sorted(union)}"
            )
        self.blocks = bs
        self.n = n

    @classmethod
    def _trusted(cls, blocks: tuple[tuple[int, ...], ...], n: int) -> "BlockSequence":
        self = cls.__new__(cls)
        self.blocks = blocks
        self.n = n
        return self

    @classmethod
    def parse(cls, text: str) -> "BlockSequence":
        return parse_block_sequence(text)

    @classmethod
    def parallel(cls, n: int) -> "BlockSequence":
        return cls._trusted((tuple(range(n)),), n)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __getitem__(self, i):
        return self.blocks[i]

    def __eq__(self, other):
        if not isinstance(other, BlockSequence):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __str__(self):
        return "(" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + ")"

    def __repr__(self):
        return f"BlockSequence({self})"

    def rotated(self, k: int) -> "BlockSequence":
        """Circular shift moving the block at position 0 to position ``k``."""
        p = len(self.blocks)
        k %= p
        if k == 0:
            return self
        return BlockSequence._trusted(self.blocks[p - k:] + self.blocks[: p - k], self.n)


Mode = Union[PartitionedOrder, BlockSequence]


@dataclass(frozen=True)
class MatrixRepresentation:
    """O-blocks grouped by length: ``matrices[j]`` holds the rows of length ``j``,
    sorted by first element."""

    n: int
    matrices: dict

    @property
    def partition(self) -> IntegerPartition:
        return IntegerPartition(
            tuple(j for j, rows in self.matrices.items() for _ in rows)
        )

    def columns(self, j: int) -> tuple[tuple[int, ...], ...]:
        rows = self.matrices.get(j, ())
        return tuple(tuple(row[c] for row in rows) for c in range(j)) if rows else ()

    def to_order(self) -> PartitionedOrder:
        return PartitionedOrder(
            [row for j in sorted(self.matrices) for row in self.matrices[j]], self.n
        )


def phi(mu: PartitionedOrder) -> BlockSequence:
    """Rewrite a partitioned order as its sequence of ``lcm`` blocks."""
    if mu._phi is None:
        p = mu.period
        blocks = tuple(
            tuple(sorted(ob[ell % len(ob)] for ob in mu.oblocks)) for ell in range(p)
        )
        mu._phi = BlockSequence._trusted(blocks, mu.n)
    return mu._phi


def as_block_sequence(mode: Mode) -> BlockSequence:
    return phi(mode) if isinstance(mode, PartitionedOrder) else mode


def is_ordered_partition(bs: BlockSequence) -> bool:
    # union already covers 0..n-1, so disjointness is a size check
    return sum(len(b) for b in bs.blocks) == bs.n


def in_intersection(bs: BlockSequence) -> bool:
    """Whether ``bs`` is block-sequential and also the image of a partitioned order."""
    return is_ordered_partition(bs) and len({len(b) for b in bs.blocks}) == 1


def phi_section(bs: BlockSequence) -> PartitionedOrder:
    """A partitioned order whose image is ``bs``.

    The k-th smallest element of every block goes into o-block ``k``.
    """
    if not in_intersection(bs):
        raise PreconditionError(f"{bs} is not an equal-size ordered partition")
    s = len(bs.blocks[0])
    return PartitionedOrder([tuple(b[k] for b in bs.blocks) for k in range(s)], bs.n)


def matrix_repr(mu: PartitionedOrder) -> MatrixRepresentation:
    matrices: dict[int, list] = {}
    for ob in mu.oblocks:
        matrices.setdefault(len(ob), []).append(ob)
    return MatrixRepresentation(
        mu.n, {j: tuple(sorted(rows)) for j, rows in sorted(matrices.items())}
    )


def _same_n(mu, mu2):
    if mu.n != mu2.n:
        raise MismatchedSizeError(f"modes act on {mu.n} and {mu2.n} automata")


def equiv0(mu: PartitionedOrder, mu2: PartitionedOrder) -> bool:
    _same_n(mu, mu2)
    return phi(mu) == phi(mu2)


def shift(bs: BlockSequence, bs2: BlockSequence) -> Optional[int]:
    """Smallest ``k`` with ``bs == bs2.rotated(k)``, or ``None``."""
    if len(bs) != len(bs2) or bs.n != bs2.n:
        return None
    p = len(bs)
    target = bs.blocks
    doubled = bs2.blocks + bs2.blocks
    for k in range(p):
        # rotated(k) starts at index p - k of the original
        start = (p - k) % p
        if doubled[start:start + p] == target:
            return k
    return None


def equiv_star(mu: PartitionedOrder, mu2: PartitionedOrder) -> Optional[int]:
    """The smallest shift relating the two images, or ``None`` if unrelated."""
    _same_n(mu, mu2)
    return shift(phi(mu), phi(mu2))


def canonical_bp(mu: PartitionedOrder) -> PartitionedOrder:
    # construction already sorts o-blocks by (length, first element)
    return mu


def canonical_bp0(mu: PartitionedOrder) -> tuple:
    """Key equal for two modes iff they have the same image under phi.

    Each matrix is reduced to the sets of its columns.
    """
    mr = matrix_repr(mu)
    return tuple(
        (j, tuple(tuple(sorted(col)) for col in mr.columns(j))) for j in mr.matrices
    )


def canonical_bpstar(mu: PartitionedOrder) -> tuple:
    """Key equal for two modes iff their images are rotations of each other:
    the lexicographically least rotation of the image."""
    blocks = phi(mu).blocks
    p = len(blocks)
    return min(blocks[k:] + blocks[:k] for k in range(p))


def update_counts(mode: Mode) -> list[int]:
    """How many substeps update each automaton during one step."""
    bs = as_block_sequence(mode)
    counts = [0] * bs.n
    for b in bs.blocks:
        for i in b:
            counts[i] += 1
    return counts


def first_update_times(mode: Mode) -> list[int]:
    bs = as_block_sequence(mode)
    times = [-1] * bs.n
    for t, b in enumerate(bs.blocks):
        for i in b:
            if times[i] < 0:
                times[i] = t
    return times


# -- text grammar -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([{}(),]))")


def _tokens(text: str):
    pos = 0
    out = []
    text_end = len(text.rstrip())
    while pos < text_end:
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ModeSyntaxError("unexpected character", text, pos)
        start = mt.start(1) if mt.group(1) else mt.start(2)
        out.append((mt.group(1) or mt.group(2), start))
        pos = mt.end()
    out.append(("", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, expected=None):
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            shown = repr(tok) if tok else "end of input"
            raise ModeSyntaxError(f"expected {expected!r}, found {shown}", self.text, pos)
        self.i += 1
        return tok

    def group(self, open_, close):
        self.take(open_)
        items = []
        while True:
            tok, pos = self.toks[self.i]
            if not tok.isdigit():
                raise ModeSyntaxError("expected an automaton index", self.text, pos)
            items.append(int(self.take()))
            if self.peek() == ",":
                self.take()
                continue
            self.take(close)
            return items

    def sequence(self, open_, close, inner_open, inner_close):
        self.take(open_)
        groups = [self.group(inner_open, inner_close)]
        while self.peek() == ",":
            self.take()
            groups.append(self.group(inner_open, inner_close))
        self.take(close)
        self.take("")
        return groups


def parse_partitioned_order(text: str) -> PartitionedOrder:
    return PartitionedOrder(_Parser(text).sequence("{", "}", "(", ")"))


def parse_block_sequence(text: str) -> BlockSequence:
    groups = _Parser(text).sequence("(", ")", "{", "}")
    for g in groups:
        if len(set(g)) != len(g):
            raise InvalidModeError(f"repeated automaton in block {{{g}}}")
    return BlockSequence(groups)


def parse_mode(text: str) -> Mode:
    """Parse either grammar, dispatching on the outer bracket."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_partitioned_order(text)
    if stripped.startswith("("):
        return parse_block_sequence(text)
    raise ModeSyntaxError("a mode starts with '{' or '('", text, len(text) - len(stripped))
