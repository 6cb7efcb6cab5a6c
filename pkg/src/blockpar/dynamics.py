"""Finite automata networks under block-sequential and block-parallel modes.

Local functions are explicit tables over the configuration index. A
configuration ``x`` is indexed in mixed radix with automaton 0 most
significant::

    idx = sum_i x[i] * prod_{j > i} alphabets[j]

The network file format is JSON ``{"n", "alphabets", "tables"}`` where
``tables[i][idx]`` is the value of local function ``i`` at the
configuration with index ``idx``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, NamedTuple, Optional, Sequence, Union

import numpy as np

from ._backend import get_kernels
from .errors import (
    ConstructionError,
    InvalidModeError,
    ModesEquivalentError,
    StateSpaceTooLarge,
)
from .modes import (
    BlockSequence,
    PartitionedOrder,
    as_block_sequence,
    equiv0,
    equiv_star,
    first_update_times,
    matrix_repr,
    update_counts,
)

__all__ = [
    "AutomataNetwork",
    "DynamicsGraph",
    "LimitStructure",
    "EqualityWitness",
    "MAX_CONFIGURATIONS",
    "step_block",
    "apply_mode",
    "transition_graph",
    "limit_structure",
    "limit_dynamics_isomorphic",
    "limit_isomorphism",
    "random_network",
    "witness_network_eq0",
    "witness_network_star",
]

MAX_CONFIGURATIONS = 1 << 24

Mode = Union[PartitionedOrder, BlockSequence]


class AutomataNetwork:
    """``n`` automata with finite alphabets and tabulated local functions."""

    def __init__(self, alphabets: Sequence[int], tables, name: str = ""):
        self.alphabets = tuple(int(a) for a in alphabets)
        self.n = len(self.alphabets)
        if self.n == 0:
            raise ValueError("a network needs at least one automaton")
        if any(a < 1 for a in self.alphabets):
            raise ValueError(f"alphabet sizes must be >= 1: {self.alphabets}")
        self.size = math.prod(self.alphabets)
        if self.size > MAX_CONFIGURATIONS:
            raise StateSpaceTooLarge(
                f"{self.size} configurations exceeds the guard of {MAX_CONFIGURATIONS}"
            )
        tables = np.asarray(tables, dtype=np.int64)
        if tables.shape != (self.n, self.size):
            raise ValueError(f"tables must have shape {(self.n, self.size)}, got {tables.shape}")
        for i, a in enumerate(self.alphabets):
            row = tables[i]
            if row.size and (row.min() < 0 or row.max() >= a):
                raise ValueError(f"table {i} has values outside [0, {a})")
        tables.setflags(write=False)
        self.tables = tables
        self.name = name
        self._strides = tuple(get_kernels("python").strides(list(self.alphabets)))

    @classmethod
    def from_functions(
        cls,
        alphabets: Sequence[int],
        functions: Sequence[Callable[[tuple], int]],
        name: str = "",
    ) -> "AutomataNetwork":
        """Tabulate local functions given as callables on configuration tuples."""
        alphabets = tuple(alphabets)
        if len(functions) != len(alphabets):
            raise ValueError("need one local function per automaton")
        size = math.prod(alphabets)
        if size > MAX_CONFIGURATIONS:
            raise StateSpaceTooLarge(f"{size} configurations exceeds the guard")
        configs = list(np.ndindex(*alphabets))
        tables = [[int(f(x)) for x in configs] for f in functions]
        return cls(alphabets, tables, name=name)

    @classmethod
    def identity(cls, alphabets: Sequence[int]) -> "AutomataNetwork":
        return cls.from_functions(
            alphabets, [lambda x, i=i: x[i] for i in range(len(alphabets))], name="identity"
        )

    def encode(self, x: Sequence[int]) -> int:
        if len(x) != self.n:
            raise ValueError(f"configuration must have {self.n} components")
        idx = 0
        for xi, a, s in zip(x, self.alphabets, self._strides):
            if not 0 <= xi < a:
                raise ValueError(f"component {xi} outside alphabet of size {a}")
            idx += xi * s
        return idx

    def decode(self, idx: int) -> tuple[int, ...]:
        if not 0 <= idx < self.size:
            raise ValueError(f"configuration index {idx} out of range")
        return tuple((idx // s) % a for a, s in zip(self.alphabets, self._strides))

    def local(self, i: int, x: Sequence[int]) -> int:
        return int(self.tables[i, self.encode(x)])

    def label(self, idx: int) -> str:
        digits = self.decode(idx)
        sep = "," if any(a > 10 for a in self.alphabets) else ""
        return sep.join(map(str, digits))

    def to_json(self) -> dict:
        return {"n": self.n, "alphabets": list(self.alphabets), "tables": self.tables.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "AutomataNetwork":
        try:
            n, alphabets, tables = data["n"], data["alphabets"], data["tables"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"network document lacks field {exc}") from None
        if n != len(alphabets):
            raise ValueError(f"n={n} but {len(alphabets)} alphabets given")
        return cls(alphabets, tables)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "AutomataNetwork":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<AutomataNetwork{tag} n={self.n} alphabets={self.alphabets}>"


def random_network(alphabets: Sequence[int], rng: np.random.Generator) -> AutomataNetwork:
    """Independent uniform table entries."""
    alphabets = tuple(alphabets)
    size = math.prod(alphabets)
    tables = np.stack([rng.integers(0, a, size) for a in alphabets])
    return AutomataNetwork(alphabets, tables, name="random")


def _check_mode(f: AutomataNetwork, mode: Mode) -> BlockSequence:
    bs = as_block_sequence(mode)
    if bs.n != f.n:
        raise InvalidModeError(f"mode acts on {bs.n} automata, network has {f.n}")
    return bs


def step_block(f: AutomataNetwork, x: Sequence[int], block: Iterable[int]) -> tuple[int, ...]:
    """Update the automata of ``block`` simultaneously."""
    idx = f.encode(x)
    out = list(x)
    for i in block:
        if not 0 <= i < f.n:
            raise IndexError(f"automaton {i} out of range for n={f.n}")
        out[i] = int(f.tables[i, idx])
    return tuple(out)


def apply_mode(f: AutomataNetwork, mode: Mode, x: Sequence[int]) -> tuple[int, ...]:
    """One full step: the blocks of ``mode`` in order (partitioned orders go
    through ``phi`` first)."""
    bs = _check_mode(f, mode)
    x = tuple(x)
    for block in bs.blocks:
        x = step_block(f, x, block)
    return x


@dataclass(frozen=True)
class LimitStructure:
    limit_set: frozenset
    cycles: tuple
    attractors: tuple

    @property
    def cycle_lengths(self) -> list[int]:
        return sorted(len(c) for c in self.cycles)

    @property
    def fixed_points(self) -> list[int]:
        return [c[0] for c in self.cycles if len(c) == 1]


@dataclass(eq=False)
class DynamicsGraph:
    """The functional graph of one network under one mode."""

    network: AutomataNetwork
    mode: BlockSequence
    successors: np.ndarray
    backend: Optional[str] = field(default=None, repr=False)

    @cached_property
    def _cycles(self):
        return get_kernels(self.backend).functional_cycles(self.successors)

    @cached_property
    def limit(self) -> LimitStructure:
        cycle_id, cycles = self._cycles
        on_cycle = cycle_id >= 0
        # a cycle attracts when some node off it maps into it
        off = ~on_cycle
        targets = self.successors[off]
        hit = np.unique(cycle_id[targets[on_cycle[targets]]])
        attracted = set(hit.tolist())
        return LimitStructure(
            limit_set=frozenset(np.flatnonzero(on_cycle).tolist()),
            cycles=tuple(tuple(c) for c in cycles),
            attractors=tuple(k in attracted for k in range(len(cycles))),
        )

    def to_dict(self) -> dict:
        lim = self.limit
        return {
            "successors": self.successors.tolist(),
            "cycles": [list(c) for c in lim.cycles],
            "attractors": list(lim.attractors),
        }

    def to_dot(self, name: str = "dynamics") -> str:
        f = self.network
        lim = self.limit
        on_cycle = lim.limit_set
        lines = [f'digraph "{name}" {{']
        for idx in range(f.size):
            shape = "doublecircle" if self.successors[idx] == idx else "circle"
            style = ', style="bold"' if idx in on_cycle else ""
            lines.append(f'  "{f.label(idx)}" [shape={shape}{style}];')
        for idx in range(f.size):
            lines.append(f'  "{f.label(idx)}" -> "{f.label(int(self.successors[idx]))}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def transition_graph(f: AutomataNetwork, mode: Mode, backend: Optional[str] = None) -> DynamicsGraph:
    bs = _check_mode(f, mode)
    if f.size > MAX_CONFIGURATIONS:
        raise StateSpaceTooLarge(f"{f.size} configurations exceeds the guard")
    succ = get_kernels(backend).successors(f.tables, f.alphabets, bs.blocks)
    succ = np.asarray(succ, dtype=np.int64)
    succ.setflags(write=False)
    return DynamicsGraph(f, bs, succ, backend)


def limit_structure(g: DynamicsGraph) -> LimitStructure:
    return g.limit


def limit_dynamics_isomorphic(g1: DynamicsGraph, g2: DynamicsGraph) -> bool:
    """Both restrictions to the limit set are permutations, so they are
    isomorphic exactly when their cycle types agree."""
    return g1.limit.cycle_lengths == g2.limit.cycle_lengths


def limit_isomorphism(g1: DynamicsGraph, g2: DynamicsGraph) -> Optional[dict[int, int]]:
    """An explicit bijection between the limit sets commuting with both
    dynamics, or ``None`` if there is none."""
    if not limit_dynamics_isomorphic(g1, g2):
        return None
    pool: dict[int, list] = {}
    for c in g2.limit.cycles:
        pool.setdefault(len(c), []).append(c)
    mapping = {}
    for c in g1.limit.cycles:
        partner = pool[len(c)].pop()
        mapping.update(zip(c, partner))
    return mapping


# -- witnesses ----------------------------------------------------------------


class EqualityWitness(NamedTuple):
    network: AutomataNetwork
    configuration: tuple


def _counter_network(n: int, target: int, modulus: int, name: str) -> AutomataNetwork:
    alphabets = [1] * n
    alphabets[target] = modulus
    fns = [lambda x, i=i: x[i] for i in range(n)]
    fns[target] = lambda x: (x[target] + 1) % modulus
    return AutomataNetwork.from_functions(alphabets, fns, name=name)


def _order_pair(mu: Mode, mu2: Mode) -> Optional[tuple[int, int]]:
    t1, t2 = first_update_times(mu), first_update_times(mu2)
    for i in range(len(t1)):
        for j in range(len(t1)):
            if i != j and t1[i] <= t1[j] and t2[i] > t2[j]:
                return i, j
    return None


def witness_network_eq0(mu: PartitionedOrder, mu2: PartitionedOrder) -> EqualityWitness:
    """A network and configuration on which the two modes give different images.

    Preferred construction: automata ``i, j`` with ``i`` first updated no
    later than ``j`` under ``mu`` but strictly later under ``mu2``; then
    ``f_i = x_i or x_j``, ``f_j = x_i`` from ``x_i = 0, x_j = 1`` ends with
    ``x_i = 1`` under ``mu`` and ``x_i = 0`` under ``mu2``. Such a pair can
    be missing (e.g. ``{(0),(1,2)}`` against ``{(1),(0,2)}``); the update
    counts then differ and a modular counter on one automaton separates
    the modes instead.
    """
    if equiv0(mu, mu2):
        raise ModesEquivalentError(f"{mu} and {mu2} have the same image")
    n = mu.n
    pair = _order_pair(mu, mu2)
    if pair is not None:
        i, j = pair
        fns = [lambda x, k=k: x[k] for k in range(n)]
        fns[i] = lambda x: x[i] | x[j]
        fns[j] = lambda x: x[i]
        f = AutomataNetwork.from_functions([2] * n, fns, name=f"or-copy({i},{j})")
        x = [0] * n
        x[j] = 1
        x = tuple(x)
    else:
        c1, c2 = update_counts(mu), update_counts(mu2)
        diff = [k for k in range(n) if c1[k] != c2[k]]
        if not diff:
            raise ConstructionError(f"no separating construction for {mu} and {mu2}")
        k = diff[0]
        f = _counter_network(n, k, max(c1[k], c2[k]), name=f"counter({k})")
        x = (0,) * n
    if apply_mode(f, mu, x) == apply_mode(f, mu2, x):
        raise ConstructionError(f"witness failed to separate {mu} and {mu2}")
    return EqualityWitness(f, x)


def _sync_pairs(bs: BlockSequence) -> set[tuple[int, int]]:
    pairs = set()
    for b in bs.blocks:
        pairs.update(combinations(b, 2))
    return pairs


def _exchange_network(n, i, j, counts, name) -> AutomataNetwork:
    # state of i and j: bit * c + counter, the counter runs modulo the number
    # of updates per step so it is 0 at exactly one update
    ci, cj = counts[i], counts[j]
    alphabets = [1] * n
    alphabets[i] = 2 * ci
    alphabets[j] = 2 * cj

    def make(me, cm, other, co):
        def fn(x):
            bit, ctr = divmod(x[me], cm)
            if ctr == 0:
                bit = x[other] // co
            return bit * cm + (ctr + 1) % cm
        return fn

    fns = [lambda x, k=k: x[k] for k in range(n)]
    fns[i] = make(i, ci, j, cj)
    fns[j] = make(j, cj, i, ci)
    return AutomataNetwork.from_functions(alphabets, fns, name=name)


def _column_of(mu: PartitionedOrder) -> dict[int, tuple[int, int]]:
    where = {}
    for ob in mu.oblocks:
        for c, a in enumerate(ob):
            where[a] = (len(ob), c)
    return where


def _reversed_triple(mu: PartitionedOrder, mu2: PartitionedOrder):
    """Automata ``(i, j, k)`` of one matrix updated cyclically in order
    i, j, k under ``mu`` and i, k, j under ``mu2``."""
    where2 = _column_of(mu2)
    mr = matrix_repr(mu)
    for j, rows in mr.matrices.items():
        if j < 3:
            continue
        reps = [rows[0][c] for c in range(j)]
        if any(where2[r][0] != j for r in reps):
            continue
        perm = [where2[r][1] for r in reps]
        for a, b, c in combinations(range(j), 3):
            if (perm[b] - perm[a]) % j > (perm[c] - perm[a]) % j:
                return reps[a], reps[b], reps[c]
    return None


def _rotation_network(n, i, j, k, name) -> AutomataNetwork:
    alphabets = [1] * n
    for a in (i, j, k):
        alphabets[a] = 2
    fns = [lambda x, q=q: x[q] for q in range(n)]
    fns[i] = lambda x: x[k]
    fns[j] = lambda x: x[i]
    fns[k] = lambda x: x[j]
    return AutomataNetwork.from_functions(alphabets, fns, name=name)


def witness_network_star(mu: PartitionedOrder, mu2: PartitionedOrder) -> AutomataNetwork:
    """A network whose limit dynamics under ``mu`` and ``mu2`` are not isomorphic.

    Constructions, tried in order:

    * some automaton is updated a different number of times per step:
      a counter modulo the larger count on that automaton alone;
    * some pair is updated together in one image and never in the other:
      the pair exchanges bits, each only when its own per-step counter is 0;
    * one matrix has three columns visited in a different cyclic order:
      a three-automaton rotation.

    Automata not involved get a one-letter alphabet. ``network.name``
    records which construction was used.
    """
    if equiv_star(mu, mu2) is not None:
        raise ModesEquivalentError(f"{mu} and {mu2} are rotations of each other")
    n = mu.n
    bs1, bs2 = as_block_sequence(mu), as_block_sequence(mu2)
    c1, c2 = update_counts(bs1), update_counts(bs2)
    f = None
    for a in range(n):
        if c1[a] != c2[a]:
            f = _counter_network(n, a, max(c1[a], c2[a]), name=f"counter({a})")
            break
    if f is None:
        s1, s2 = _sync_pairs(bs1), _sync_pairs(bs2)
        only = sorted(s1 ^ s2)
        if only:
            i, j = only[0]
            where1, where2 = _column_of(mu), _column_of(mu2)
            same_matrix = where1[i][0] == where1[j][0] == where2[i][0] == where2[j][0]
            tag = "same-column" if same_matrix else "synchronised"
            f = _exchange_network(n, i, j, c1, name=f"exchange({i},{j}) {tag}")
        else:
            triple = _reversed_triple(mu, mu2) or _reversed_triple(mu2, mu)
            if triple is None:
                raise ConstructionError(f"no separating construction for {mu} and {mu2}")
            f = _rotation_network(n, *triple, name="rotation({},{},{})".format(*triple))
    if limit_dynamics_isomorphic(transition_graph(f, bs1), transition_graph(f, bs2)):
        raise ConstructionError(f"{f.name} failed to separate {mu} and {mu2}")
    return f
