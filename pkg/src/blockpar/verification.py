"""Cross-checks between formulas, enumerators, oracles and dynamics.

Each check yields a :class:`Check` with the expected and actual values; the
``verify`` CLI subcommand prints them and exits non-zero on any failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Iterator

import numpy as np

from . import counting
from .dynamics import (
    limit_dynamics_isomorphic,
    random_network,
    transition_graph,
    witness_network_eq0,
    witness_network_star,
)
from .enumeration import ORACLE_MAX_N, enum_modes, oracle_enum_bp
from .modes import (
    BlockSequence,
    canonical_bp0,
    canonical_bpstar,
    equiv0,
    equiv_star,
    in_intersection,
    parse_partitioned_order,
    phi,
)
from .networks import example_network, rotation_network

# Published sequence terms, n = 1 onward.
KNOWN = {
    "bs": [1, 3, 13, 75, 541, 4683, 47293, 545835, 7087261, 102247563],
    "bp": [1, 3, 13, 73, 501, 4051, 37633, 394353, 4596553, 58941091,
           824073141, 12470162233],
    "bp0": [1, 3, 13, 67, 471, 3591, 33573, 329043, 3919387, 47827093,
            663429603, 9764977399],
    "bpstar": [1, 2, 6, 24, 120, 795, 5565, 46060, 454860, 4727835,
               54223785, 734932121],
}

LABELS = {"bs": "BS", "bp": "BP", "bp0": "BP0", "bpstar": "BPstar"}

VERIFY_MAX_N = 9
DYNAMICS_MAX_N = 4


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        return f"{status}  {self.name}: expected={self.expected} actual={self.actual}"


def _random_alphabets(rng: np.random.Generator, n: int) -> list[int]:
    return rng.integers(1, 4, n).tolist()


def equivalence_checks(n: int, seed: int, networks: int = 30, pairs=None) -> Iterator[Check]:
    """Both equivalence lemmas, on the pairs from ``enum_bp(n)``.

    Equivalent pairs are run on ``networks`` random networks; inequivalent
    pairs must be separated by the corresponding witness.
    """
    modes = list(enum_modes(n, "bp"))
    if pairs is None:
        pairs = [(a, b) for k, a in enumerate(modes) for b in modes[k + 1:]]
    rng = np.random.default_rng(seed)
    bad0 = bad_star = 0
    for a, b in pairs:
        if equiv0(a, b):
            for _ in range(networks):
                f = random_network(_random_alphabets(rng, n), rng)
                if not np.array_equal(transition_graph(f, a).successors,
                                      transition_graph(f, b).successors):
                    bad0 += 1
        else:
            w = witness_network_eq0(a, b)
            if transition_graph(w.network, a).successors.tolist() == \
                    transition_graph(w.network, b).successors.tolist():
                bad0 += 1
        if equiv_star(a, b) is not None:
            for _ in range(networks):
                f = random_network(_random_alphabets(rng, n), rng)
                if not limit_dynamics_isomorphic(transition_graph(f, a), transition_graph(f, b)):
                    bad_star += 1
        else:
            f = witness_network_star(a, b)
            if limit_dynamics_isomorphic(transition_graph(f, a), transition_graph(f, b)):
                bad_star += 1
    yield Check(f"equal-image lemma failures n={n} ({len(pairs)} pairs)", 0, bad0)
    yield Check(f"rotation lemma failures n={n} ({len(pairs)} pairs)", 0, bad_star)


def run_checks(n_max: int, seed: int = 0) -> Iterator[Check]:
    if not 1 <= n_max <= VERIFY_MAX_N:
        raise ValueError(f"n_max must be in 1..{VERIFY_MAX_N}")
    for n in range(1, n_max + 1):
        for cls in ("bs", "bp", "bp0", "bpstar"):
            yield Check(f"{LABELS[cls]}_{n} =", KNOWN[cls][n - 1], counting.count_by_class(n, cls))
        for cls in ("bp", "bp0", "bpstar"):
            yield Check(
                f"|enum_{cls}({n})| = count", counting.count_by_class(n, cls),
                enum_modes(n, cls).count(),
            )
        yield Check(f"EGF coefficient {n}", counting.count_bp0(n), counting.egf_bp0_check(n)[-1])
        if n <= ORACLE_MAX_N:
            oracle = oracle_enum_bp(n)
            yield Check(f"enum_bp({n}) equals brute force (set)", True, set(enum_modes(n, "bp")) == oracle)
            yield Check(
                f"enum_bp0({n}) classes equal brute force", True,
                {canonical_bp0(m) for m in enum_modes(n, "bp0")} == {canonical_bp0(m) for m in oracle},
            )
            yield Check(
                f"enum_bpstar({n}) classes equal brute force", True,
                {canonical_bpstar(m) for m in enum_modes(n, "bpstar")}
                == {canonical_bpstar(m) for m in oracle},
            )
            images = {phi(m) for m in oracle}
            inter = {bs for bs in images if in_intersection(bs)}
            yield Check(f"|BS_{n} ∩ phi(BP_{n})|", counting.count_bs_inter_bp(n), len(inter))
    for n in range(3, min(n_max, DYNAMICS_MAX_N) + 1):
        yield from equivalence_checks(n, seed)

    f = example_network()
    g_bs = transition_graph(f, BlockSequence.parse("({1},{0,2})"))
    g_bp = transition_graph(f, parse_partitioned_order("{(0),(2,1)}"))
    yield Check("example, sequential mode: cycle lengths", [1, 1, 4], g_bs.limit.cycle_lengths)
    yield Check("example, sequential mode: attracting fixed points",
                ["211"], _attracting_fixed(g_bs))
    yield Check("example, parallel-block mode: cycle lengths", [1, 1, 2], g_bp.limit.cycle_lengths)
    yield Check("example, parallel-block mode: attracting fixed points", [], _attracting_fixed(g_bp))
    r = rotation_network(3)
    yield Check("rotation network, ({1,2},{0,2},{0,1}) fixed points", 4,
                len(transition_graph(r, BlockSequence.parse("({1,2},{0,2},{0,1})")).limit.fixed_points))
    yield Check("rotation network, parallel fixed points", 2,
                len(transition_graph(r, BlockSequence.parallel(3)).limit.fixed_points))


def _attracting_fixed(g) -> list[str]:
    lim = g.limit
    return [g.network.label(c[0]) for c, a in zip(lim.cycles, lim.attractors) if len(c) == 1 and a]


def sample_pairs(modes: list, k: int, seed: int) -> list:
    """``k`` distinct unordered pairs, drawn with a seeded generator."""
    rnd = random.Random(seed)
    total = len(modes) * (len(modes) - 1) // 2
    chosen: set = set()
    k = min(k, total)
    while len(chosen) < k:
        a, b = rnd.sample(range(len(modes)), 2)
        chosen.add((min(a, b), max(a, b)))
    return [(modes[a], modes[b]) for a, b in sorted(chosen)]
