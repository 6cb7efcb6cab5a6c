import math

import pytest
from conftest import brute_partitions, partition_number

from blockpar.errors import EmptyInputError
from blockpar.partitions import (
    IntegerPartition,
    enum_partitions,
    part_stats,
    partition_count,
)


def test_single_partition_of_one():
    assert [p.parts for p in enum_partitions(1)] == [(1,)]


def test_partitions_of_four_in_lexicographic_order():
    assert [p.parts for p in enum_partitions(4)] == [
        (1, 1, 1, 1), (1, 1, 2), (1, 3), (2, 2), (4,),
    ]


@pytest.mark.parametrize("n", range(1, 21))
def test_count_and_set_match_recursive_oracle(n):
    got = [p.parts for p in enum_partitions(n)]
    assert len(got) == partition_number(n) == partition_count(n)
    assert len(set(got)) == len(got)
    if n <= 14:
        assert set(got) == set(brute_partitions(n))
    assert got == sorted(got)


def test_large_partition_is_listed():
    target = (2, 2, 3, 3, 3, 3, 5, 5, 5)
    assert sum(target) == 31
    assert any(p.parts == target for p in enum_partitions(31))


@pytest.mark.parametrize("n", range(1, 16))
def test_statistics_are_consistent(n):
    for p in enum_partitions(n):
        st = p.stats
        assert sum(j * st.multiplicity(j) for j in range(1, st.d + 1)) == n
        assert st.d == max(p.parts)
        assert all(st.lcm % j == 0 for j in p.parts)
        assert math.factorial(n) % st.lcm == 0
        assert st.m[0] == 0 and len(st.m) == st.d + 1


def test_stats_of_the_large_example():
    st = part_stats(IntegerPartition((2, 2, 3, 3, 3, 3, 5, 5, 5)))
    assert st.d == 5
    assert [st.multiplicity(j) for j in range(1, 6)] == [0, 2, 4, 0, 3]
    assert st.lcm == 30


def test_stats_small_cases():
    st = part_stats(IntegerPartition((1, 1, 1)))
    assert (st.d, st.multiplicity(1), st.lcm) == (1, 3, 1)
    st = part_stats(IntegerPartition((3, 2)))
    assert (st.d, st.multiplicity(2), st.multiplicity(3), st.lcm) == (3, 1, 1, 6)
    assert st.sizes() == [2, 3]


def test_parts_are_stored_sorted():
    assert IntegerPartition((3, 1, 2)).parts == (1, 2, 3)
    assert IntegerPartition((3, 1, 2)).n == 6
    assert str(IntegerPartition((2, 1))) == "(1,2)"


def test_empty_input_rejected():
    with pytest.raises(EmptyInputError):
        list(enum_partitions(0))
    with pytest.raises(ValueError):
        IntegerPartition((0, 1))
