"""Independent oracles shared by the test modules.

Nothing here imports blockpar: these are deliberately naive re-derivations
used as ground truth.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations, permutations, product

import pytest


def brute_partitions(n, largest=None):
    """Partitions of n as nondecreasing tuples, by plain recursion."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in brute_partitions(n - first, first):
            out.append(tuple(sorted((first,) + rest)))
    return out


@lru_cache(maxsize=None)
def partition_number(n, k=None):
    """p(n) with parts at most k, via the two-term recurrence."""
    if k is None:
        k = n
    if n == 0:
        return 1
    if n < 0 or k == 0:
        return 0
    return partition_number(n - k, k) + partition_number(n, k - 1)


def ordered_set_partitions(items):
    """Every ordered partition of ``items`` into nonempty blocks."""
    items = list(items)
    if not items:
        yield ()
        return
    n = len(items)
    for size in range(1, n + 1):
        for first in combinations(items, size):
            rest = [x for x in items if x not in first]
            for tail in ordered_set_partitions(rest):
                yield (frozenset(first),) + tail


def brute_bp(n):
    """Every partitioned order of 0..n-1 as a frozenset of o-block tuples:
    cut each permutation at every subset of gaps."""
    out = set()
    for perm in permutations(range(n)):
        for mask in range(1 << (n - 1)):
            blocks, cur = [], [perm[0]]
            for k in range(1, n):
                if mask >> (k - 1) & 1:
                    blocks.append(tuple(cur))
                    cur = []
                cur.append(perm[k])
            blocks.append(tuple(cur))
            out.add(frozenset(blocks))
    return out


def brute_phi(oblocks):
    """Block sequence of a partitioned order, straight from the definition."""
    p = math.lcm(*(len(s) for s in oblocks))
    return tuple(frozenset(s[l % len(s)] for s in oblocks) for l in range(p))


def rotations(seq):
    return {tuple(seq[k:] + seq[:k]) for k in range(len(seq))}


def star_key(oblocks):
    img = list(brute_phi(oblocks))
    return min(tuple(tuple(sorted(b)) for b in r) for r in rotations(img))


def simulate(alphabets, tables, blocks):
    """Successor list by stepping tuples; tables indexed like the library."""
    n = len(alphabets)
    configs = list(product(*(range(a) for a in alphabets)))
    index = {x: k for k, x in enumerate(configs)}
    succ = []
    for x in configs:
        y = list(x)
        for b in blocks:
            img = [tables[i][index[tuple(y)]] for i in range(n)]
            for i in b:
                y[i] = img[i]
        succ.append(index[tuple(y)])
    return succ


def cycle_lengths(succ):
    """Sorted lengths of the cycles of a functional graph, by walking."""
    n = len(succ)
    state = [0] * n  # 0 new, 1 on current walk, 2 finished
    lengths = []
    for s in range(n):
        path = []
        x = s
        while state[x] == 0:
            state[x] = 1
            path.append(x)
            x = succ[x]
        if state[x] == 1:
            lengths.append(len(path) - path.index(x))
        for y in path:
            state[y] = 2
    return sorted(lengths)


def oblocks_of(mu):
    return frozenset(mu.oblocks)


@pytest.fixture(params=["cython", "python"])
def backend(request):
    from blockpar import available_backends

    if request.param not in available_backends():
        pytest.skip(f"{request.param} backend not built")
    return request.param


# -- acceptance summary -------------------------------------------------------

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE[name] = "PASS" if report.passed else "FAIL"
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.failed:
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _ACCEPTANCE.items():
        terminalreporter.write_line(f"{status}  {name}")
