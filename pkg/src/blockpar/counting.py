"""Exact counts of update-mode families.

Every function returns a plain Python ``int``. Families with more than one
closed formula evaluate all of them on every call and raise
:class:`~blockpar.errors.InconsistencyError` if they disagree.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import EmptyInputError, InconsistencyError
from .partitions import IntegerPartition, PartitionStats, enum_partitions

__all__ = [
    "count_bs",
    "count_bs_inter_bp",
    "count_bp",
    "count_bp0",
    "count_bpstar",
    "egf_bp0_check",
    "count_by_class",
    "per_partition_counts",
    "CLASSES",
]


@lru_cache(maxsize=None)
def factorial(k: int) -> int:
    return math.factorial(k)


def _binom(x: int, y: int) -> int:
    return factorial(x) // (factorial(y) * factorial(x - y))


def _check_n(n: int) -> None:
    if n < 1:
        raise EmptyInputError(f"n must be >= 1, got {n}")


def _stats(n: int):
    for p in enum_partitions(n):
        yield p.stats


def _placed_before(st: PartitionStats, j: int) -> int:
    # automata already placed in matrices M_1..M_{j-1}
    return sum(k * st.m[k] for k in range(1, j))


def count_bs(n: int) -> int:
    """Ordered Bell number, summed over the partitions of ``n``."""
    _check_n(n)
    total = 0
    for st in _stats(n):
        fill = factorial(n)
        order = factorial(sum(st.m))
        for j in range(1, st.d + 1):
            fill //= factorial(j) ** st.m[j]
            order //= factorial(st.m[j])
        total += fill * order
    return total


def count_bs_inter_bp(n: int) -> int:
    """Block sequences that are both ordered partitions and images of
    partitioned orders: equal-size ordered partitions of ``n`` items."""
    _check_n(n)
    return sum(
        factorial(n) // factorial(n // d) ** d for d in range(1, n + 1) if n % d == 0
    )


def _bp_rows(n: int, st: PartitionStats) -> int:
    denom = 1
    for j in range(1, st.d + 1):
        denom *= factorial(st.m[j])
    return factorial(n) // denom


def _bp_matrices(n: int, st: PartitionStats) -> int:
    out = 1
    for j in range(1, st.d + 1):
        mj = st.m[j]
        out *= _binom(n - _placed_before(st, j), j * mj) * (
            factorial(j * mj) // factorial(mj)
        )
    return out


def count_bp(n: int) -> int:
    """Number of partitioned orders of ``n`` automata."""
    _check_n(n)
    by_rows = by_matrices = 0
    for st in _stats(n):
        by_rows += _bp_rows(n, st)
        by_matrices += _bp_matrices(n, st)
    if by_rows != by_matrices:
        raise InconsistencyError(f"count_bp({n}): {by_rows} != {by_matrices}")
    return by_rows


def _bp0_columns_factorial(n: int, st: PartitionStats) -> int:
    denom = 1
    for j in range(1, st.d + 1):
        denom *= factorial(st.m[j]) ** j
    return factorial(n) // denom


def _bp0_columns_binomial(n: int, st: PartitionStats) -> int:
    out = 1
    for j in range(1, st.d + 1):
        mj = st.m[j]
        base = n - _placed_before(st, j)
        for ell in range(1, j + 1):
            out *= _binom(base - (ell - 1) * mj, mj)
    return out


def _bp0_matrix_then_columns(n: int, st: PartitionStats) -> int:
    out = 1
    for j in range(1, st.d + 1):
        mj = st.m[j]
        term = _binom(n - _placed_before(st, j), j * mj)
        for ell in range(1, j + 1):
            term *= _binom((j - ell + 1) * mj, mj)
        out *= term
    return out


def count_bp0(n: int) -> int:
    """Partitioned orders up to equality of their block-sequence images."""
    _check_n(n)
    sums = [0, 0, 0]
    for st in _stats(n):
        sums[0] += _bp0_columns_factorial(n, st)
        sums[1] += _bp0_columns_binomial(n, st)
        sums[2] += _bp0_matrix_then_columns(n, st)
    if len(set(sums)) != 1:
        raise InconsistencyError(f"count_bp0({n}): formulas disagree {sums}")
    return sums[0]


def _bpstar_term(n: int, st: PartitionStats) -> int:
    q, r = divmod(_bp0_columns_factorial(n, st), st.lcm)
    if r:
        raise InconsistencyError(
            f"count_bpstar({n}): class size lcm={st.lcm} does not divide "
            f"the partition's dynamics count (m={st.m})"
        )
    return q


def count_bpstar(n: int) -> int:
    """Partitioned orders up to circular shift of their block-sequence images."""
    _check_n(n)
    return sum(_bpstar_term(n, st) for st in _stats(n))


def egf_bp0_check(N: int) -> list[int]:
    """Coefficients ``n! [x^n]`` of ``prod_{j>=1} sum_{k>=0} (x^k/k!)^j`` for
    ``n = 1..N``, computed with exact rationals."""
    _check_n(N)
    poly = [Fraction(0)] * (N + 1)
    poly[0] = Fraction(1)
    for j in range(1, N + 1):
        factor = [Fraction(0)] * (N + 1)
        for k in range(0, N // j + 1):
            factor[j * k] = Fraction(1, factorial(k) ** j)
        prod = [Fraction(0)] * (N + 1)
        for a, ca in enumerate(poly):
            if ca:
                for b in range(0, N + 1 - a):
                    if factor[b]:
                        prod[a + b] += ca * factor[b]
        poly = prod
    out = []
    for n in range(1, N + 1):
        value = poly[n] * factorial(n)
        if value.denominator != 1:
            raise InconsistencyError(f"EGF coefficient {n} is not integral: {value}")
        out.append(value.numerator)
    return out


CLASSES = {
    "bs": count_bs,
    "intersection": count_bs_inter_bp,
    "bp": count_bp,
    "bp0": count_bp0,
    "bpstar": count_bpstar,
}


def count_by_class(n: int, cls: str) -> int:
    try:
        fn = CLASSES[cls]
    except KeyError:
        raise ValueError(f"unknown class {cls!r}; expected one of {sorted(CLASSES)}")
    return fn(n)


def per_partition_counts(n: int, cls: str) -> list[tuple[IntegerPartition, int]]:
    """Size of each partition's share of an enumerable family, in
    enumeration order. Used to project output size and to plan shards."""
    term = {"bp": _bp_rows, "bp0": _bp0_columns_factorial, "bpstar": _bpstar_term}
    if cls not in term:
        raise ValueError(f"no per-partition split for class {cls!r}")
    _check_n(n)
    return [(p, term[cls](n, p.stats)) for p in enum_partitions(n)]
