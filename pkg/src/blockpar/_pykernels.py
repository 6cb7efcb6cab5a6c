"""Pure-Python kernels. Used when the compiled extension is unavailable.

The compiled module ``_ckernels`` exposes the same names with the same
semantics and the same output order; tests compare the two directly.
"""

from __future__ import annotations

import math
from itertools import combinations, permutations

import numpy as np

BACKEND = "python"

VARIANTS = ("bp", "bp0", "bpstar")


def matrix_shape(parts):
    """``[(j, m_j)]`` for the part sizes that occur, ascending."""
    shape = []
    for j in sorted(set(parts)):
        shape.append((j, parts.count(j)))
    return shape


def star_coefficients(shape):
    """Column bound ``a[j]`` for each occurring part size ``j``.

    Sizes are visited from largest to smallest; ``a[j] = gcd(b, j)`` where
    ``b`` is the lcm of the larger occurring sizes. Sizes that do not occur
    would get ``a[j] = j`` but have no matrix, so they are omitted.
    """
    a = {}
    b = 1
    for j, _ in reversed(shape):
        a[j] = math.gcd(b, j)
        b = math.lcm(b, j)
    return a


def _minus(pool, chosen):
    return tuple(x for x in pool if x not in chosen)


def _fill_bp(pool, j, m):
    # Rows up to reordering: sorted first column, any arrangement of the rest.
    w = j - 1
    for A in combinations(pool, j * m):
        rest = _minus(pool, A)
        for C in combinations(A, m):
            others = _minus(A, C)
            if w == 0:
                yield C, rest
                continue
            for B in permutations(others):
                flat = []
                for k in range(m):
                    flat.append(C[k])
                    flat.extend(B[k * w:(k + 1) * w])
                yield tuple(flat), rest


def _columns(pool, m, ell, force_at, low):
    if len(pool) == m:
        yield (pool,)
        return
    if ell == force_at and pool[0] == low:
        for B in combinations(pool[1:], m - 1):
            col = (low,) + B
            for tail in _columns(_minus(pool[1:], B), m, ell + 1, force_at, low):
                yield (col,) + tail
    else:
        for col in combinations(pool, m):
            for tail in _columns(_minus(pool, col), m, ell + 1, force_at, low):
                yield (col,) + tail


def _fill_columns(pool, j, m, force_at):
    # Columns as sets; with force_at > 0 the matrix minimum must land in a
    # column numbered <= force_at (1-based).
    for A in combinations(pool, j * m):
        rest = _minus(pool, A)
        for cols in _columns(A, m, 1, force_at, A[0]):
            yield tuple(cols[c][k] for k in range(m) for c in range(j)), rest


class LayoutEnumerator:
    """Every matrix filling of one integer partition, as flat layouts.

    A layout lists the o-blocks of matrices ``M_j`` for ascending ``j``,
    rows in order, each row left to right. Items are produced by an
    explicit stack of per-matrix choice points, so iteration can be
    suspended at any item.
    """

    def __init__(self, parts, variant):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        self.parts = tuple(sorted(parts))
        self.variant = variant
        self.n = sum(self.parts)
        self.shape = matrix_shape(list(self.parts))
        self._a = star_coefficients(self.shape) if variant == "bpstar" else {}
        self._stack = None
        self._chosen = [()] * len(self.shape)
        self._done = False

    def _open(self, level, pool):
        j, m = self.shape[level]
        if self.variant == "bp":
            return _fill_bp(pool, j, m)
        return _fill_columns(pool, j, m, self._a.get(j, 0))

    def __iter__(self):
        return self

    def __next__(self):
        if self._done:
            raise StopIteration
        depth = len(self.shape)
        stack = self._stack
        if stack is None:
            stack = self._stack = [self._open(0, tuple(range(self.n)))]
        chosen = self._chosen
        while stack:
            level = len(stack) - 1
            try:
                flat, rest = next(stack[level])
            except StopIteration:
                stack.pop()
                continue
            chosen[level] = flat
            if level + 1 == depth:
                if depth == 1:
                    return flat
                return sum(chosen, ())
            stack.append(self._open(level + 1, rest))
        self._done = True
        raise StopIteration

    def count(self):
        """Exhaust the remaining items and return how many there were."""
        total = 0
        for _ in self:
            total += 1
        return total


# -- dynamics ---------------------------------------------------------------


def strides(alphabets):
    out = [1] * len(alphabets)
    for i in range(len(alphabets) - 2, -1, -1):
        out[i] = out[i + 1] * alphabets[i + 1]
    return out


def successors(tables, alphabets, blocks):
    """Image index of every configuration after applying ``blocks`` in order.

    ``tables`` is an ``(n, N)`` integer array with ``tables[i, idx]`` the
    value of local function ``i`` at configuration ``idx``.
    """
    tables = np.asarray(tables, dtype=np.int64)
    n, N = tables.shape
    stride = np.asarray(strides(list(alphabets)), dtype=np.int64)
    digits = np.empty((n, N), dtype=np.int64)
    idx = np.arange(N, dtype=np.int64)
    for i in range(n):
        digits[i] = (idx // stride[i]) % alphabets[i]
    for block in blocks:
        current = stride @ digits
        for i in block:
            digits[i] = tables[i, current]
    return stride @ digits


def functional_cycles(succ):
    """Label the cycles of a functional graph.

    Returns ``cycle_id`` with the index of the cycle containing each node,
    or ``-1`` for nodes off every cycle, plus the cycles themselves, each
    starting at its smallest node.
    """
    succ = np.asarray(succ, dtype=np.int64)
    N = succ.shape[0]
    # f^(2^t) with 2^t >= N maps every node onto its limit cycle
    g = succ.copy()
    steps = 1
    while steps < N:
        g = g[g]
        steps *= 2
    on_cycle = np.zeros(N, dtype=bool)
    on_cycle[g] = True
    cycle_id = np.full(N, -1, dtype=np.int64)
    cycles = []
    for start in np.flatnonzero(on_cycle).tolist():
        if cycle_id[start] >= 0:
            continue
        cid = len(cycles)
        cyc = [start]
        cycle_id[start] = cid
        x = int(succ[start])
        while x != start:
            cyc.append(x)
            cycle_id[x] = cid
            x = int(succ[x])
        cycles.append(cyc)
    return cycle_id, cycles
