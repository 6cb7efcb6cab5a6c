import math
from itertools import combinations

import pytest
from conftest import brute_bp, brute_phi
from hypothesis import given, settings
from hypothesis import strategies as st

from blockpar.errors import (
    InvalidModeError,
    MismatchedSizeError,
    ModeSyntaxError,
    PreconditionError,
)
from blockpar.modes import (
    BlockSequence,
    PartitionedOrder,
    canonical_bp,
    canonical_bp0,
    canonical_bpstar,
    equiv0,
    equiv_star,
    first_update_times,
    in_intersection,
    is_ordered_partition,
    matrix_repr,
    parse_block_sequence,
    parse_mode,
    parse_partitioned_order,
    phi,
    phi_section,
    update_counts,
)

P = parse_partitioned_order
B = parse_block_sequence


@st.composite
def partitioned_orders(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    perm = draw(st.permutations(range(n)))
    cuts = draw(st.sets(st.integers(1, n - 1))) if n > 1 else set()
    bounds = [0, *sorted(cuts), n]
    return PartitionedOrder([perm[a:b] for a, b in zip(bounds, bounds[1:])])


# -- phi ---------------------------------------------------------------------


def test_phi_of_two_block_order():
    assert str(phi(P("{(0),(2,1)}"))) == "({0,2},{0,1})"


def test_phi_of_singletons_is_parallel():
    for n in range(1, 6):
        mu = PartitionedOrder([(i,) for i in range(n)])
        assert phi(mu) == BlockSequence.parallel(n)


def test_phi_listing_order_does_not_matter():
    assert str(phi(P("{(1,2),(0)}"))) == "({0,1},{0,2})"


@pytest.mark.parametrize("n", range(1, 7))
def test_phi_image_shape(n):
    for ob in brute_bp(n):
        mu = PartitionedOrder(ob)
        img = phi(mu)
        assert len(img) == math.lcm(*(len(s) for s in ob)) == mu.period
        assert all(len(b) == len(ob) for b in img)
        assert len(set(img.blocks)) == len(img)
        assert tuple(frozenset(b) for b in img) == brute_phi(sorted(ob))


# -- predicates ----------------------------------------------------------------


def test_ordered_partition_predicate():
    assert is_ordered_partition(B("({1},{0,2})"))
    assert not is_ordered_partition(B("({0,1},{0,2})"))
    assert is_ordered_partition(BlockSequence.parallel(4))


def test_intersection_predicate():
    assert not in_intersection(B("({0,1},{2})"))
    assert in_intersection(B("({0},{1},{2})"))
    assert not in_intersection(B("({0,2},{0,1})"))


def test_phi_section_examples():
    assert phi_section(B("({0,1},{2,3})")) == P("{(0,2),(1,3)}")
    assert phi_section(BlockSequence.parallel(3)) == P("{(0),(1),(2)}")
    assert phi_section(B("({0},{1},{2})")) == P("{(0,1,2)}")


def test_phi_section_precondition():
    with pytest.raises(PreconditionError):
        phi_section(B("({0,1},{2})"))


@given(st.integers(1, 6), st.data())
def test_phi_section_round_trip(n, data):
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    size = data.draw(st.sampled_from(divisors))
    perm = data.draw(st.permutations(range(n)))
    bs = BlockSequence([perm[k:k + size] for k in range(0, n, size)])
    assert in_intersection(bs)
    assert phi(phi_section(bs)) == bs


# -- matrices ----------------------------------------------------------------


def test_matrix_representation_of_large_example():
    mu = PartitionedOrder(
        [(0, 1), (2, 3), (4, 5, 6), (7, 8, 9), (10, 11, 12), (13, 14, 15),
         tuple(range(16, 21)), tuple(range(21, 26)), tuple(range(26, 31))]
    )
    mr = matrix_repr(mu)
    assert {j: (len(rows), len(rows[0])) for j, rows in mr.matrices.items()} == {
        2: (2, 2), 3: (4, 3), 5: (3, 5)
    }
    assert mr.matrices[3][0] == (4, 5, 6)
    assert mr.partition.parts == (2, 2, 3, 3, 3, 3, 5, 5, 5)
    assert mr.to_order() == mu


def test_matrix_representation_small():
    assert matrix_repr(P("{(0)}")).matrices == {1: ((0,),)}
    assert matrix_repr(P("{(2,1),(0)}")).matrices == {1: ((0,),), 2: ((2, 1),)}
    assert matrix_repr(P("{(3,1),(0,2)}")).columns(2) == ((0, 3), (2, 1))


# -- relations ---------------------------------------------------------------


def test_equiv0_examples():
    assert equiv0(P("{(0,1),(2,3)}"), P("{(0,3),(2,1)}"))
    mu = P("{(0),(2,1)}")
    assert equiv0(mu, mu)
    assert not equiv0(P("{(0,1)}"), P("{(1,0)}"))


def test_equiv_star_examples():
    assert equiv_star(P("{(0,1)}"), P("{(1,0)}")) == 1
    assert equiv_star(P("{(0,1),(2,3)}"), P("{(0,3),(2,1)}")) == 0
    assert equiv_star(P("{(0),(1)}"), P("{(0,1)}")) is None


def test_shift_direction():
    # sigma^k moves the block at position 0 to position k
    bs = B("({0},{1},{2})")
    assert bs.rotated(1) == B("({2},{0},{1})")
    mu, mu2 = P("{(0,1,2)}"), P("{(2,0,1)}")
    k = equiv_star(mu, mu2)
    assert phi(mu2).rotated(k) == phi(mu)


def test_mismatched_sizes_rejected():
    with pytest.raises(MismatchedSizeError):
        equiv0(P("{(0)}"), P("{(0,1)}"))
    with pytest.raises(MismatchedSizeError):
        equiv_star(P("{(0)}"), P("{(0,1)}"))


@pytest.mark.parametrize("n", range(1, 6))
def test_equiv_star_is_an_equivalence(n):
    modes = [PartitionedOrder(ob) for ob in brute_bp(n)]
    rel = {(a, b): equiv_star(a, b) is not None for a in modes for b in modes}
    for a in modes:
        assert rel[a, a]
    for a, b in combinations(modes, 2):
        assert rel[a, b] == rel[b, a]
        if equiv0(a, b):
            assert equiv_star(a, b) == 0
    if n <= 4:
        for a in modes:
            for b in modes:
                if rel[a, b]:
                    for c in modes:
                        if rel[b, c]:
                            assert rel[a, c]


@pytest.mark.parametrize("n", range(1, 7))
def test_canonical_keys_decide_the_relations(n):
    modes = [PartitionedOrder(ob) for ob in brute_bp(n)]
    for a, b in combinations(modes[:120], 2):
        assert (canonical_bp0(a) == canonical_bp0(b)) == equiv0(a, b)
        assert (canonical_bpstar(a) == canonical_bpstar(b)) == (equiv_star(a, b) is not None)


def test_canonical_key_examples():
    assert canonical_bp0(P("{(0,1),(2,3)}")) == canonical_bp0(P("{(2,1),(0,3)}"))
    assert canonical_bpstar(P("{(0,1)}")) == canonical_bpstar(P("{(1,0)}"))
    mu = P("{(0),(2,1)}")
    assert canonical_bp(mu) == mu
    assert canonical_bp(canonical_bp(mu)) == canonical_bp(mu)


def test_update_counts_and_first_times():
    mu = P("{(0),(2,1)}")
    assert update_counts(mu) == [2, 1, 1]
    assert first_update_times(mu) == [0, 1, 0]
    assert update_counts(B("({1},{0,2})")) == [1, 1, 1]


@settings(max_examples=200)
@given(partitioned_orders())
def test_phi_properties_random(mu):
    img = phi(mu)
    assert len(img) == mu.period
    assert sum(update_counts(mu)) == len(img) * len(mu.oblocks)
    assert equiv_star(mu, mu) == 0
    k = len(img) // 2
    assert img.rotated(k).rotated(len(img) - k) == img


# -- construction and grammar -------------------------------------------------------


def test_construction_canonicalises():
    a = PartitionedOrder([(2, 1), (0,)])
    b = PartitionedOrder([(0,), (2, 1)])
    assert a == b and hash(a) == hash(b)
    assert a.oblocks == ((0,), (2, 1))


@pytest.mark.parametrize("bad", [[(0,), (0, 1)], [(0,), (2,)], [()], []])
def test_invalid_orders_rejected(bad):
    with pytest.raises(InvalidModeError):
        PartitionedOrder(bad)


@pytest.mark.parametrize("bad", [[(0,), ()], [(1,)], []])
def test_invalid_block_sequences_rejected(bad):
    with pytest.raises(InvalidModeError):
        BlockSequence(bad)


def test_overlapping_blocks_allowed():
    assert len(BlockSequence([(0, 1), (0, 2)])) == 2


@settings(max_examples=200)
@given(partitioned_orders())
def test_print_parse_round_trip(mu):
    assert parse_partitioned_order(str(mu)) == mu
    assert parse_block_sequence(str(phi(mu))) == phi(mu)
    assert parse_mode(" ".join(str(mu))) == mu


def test_grammar_is_whitespace_insensitive():
    assert P(" { ( 0 ) ,\n( 2 , 1 ) } ") == P("{(0),(2,1)}")
    assert B("( {1} , {0, 2} )") == B("({1},{0,2})")
    assert isinstance(parse_mode("({0})"), BlockSequence)
    assert isinstance(parse_mode("{(0)}"), PartitionedOrder)


@pytest.mark.parametrize(
    "text, position",
    [("{(0),(2,1}", 9), ("{(0)", 4), ("{(0),(a)}", 6), ("[0]", 0), ("{(0)}x", 5), ("{()}", 2)],
)
def test_syntax_errors_report_position(text, position):
    with pytest.raises(ModeSyntaxError) as info:
        parse_mode(text)
    assert info.value.position == position


def test_repeated_element_in_block_rejected():
    with pytest.raises(InvalidModeError):
        B("({0,0},{1})")


def test_json_form():
    assert P("{(2,1),(0)}").to_json() == {"oblocks": [[0], [2, 1]]}
