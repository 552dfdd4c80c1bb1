import itertools

import pytest
from hypothesis import given, settings, strategies as st

from csl.partition import (
    CoalitionStructure,
    UnsupportedSize,
    all_partitions,
    bell_log2_lower_bound,
    bell_numbers,
    ceil_log2,
    random_structure,
    singletons,
)

S = CoalitionStructure.from_blocks


def test_singletons():
    assert singletons(3) == S([[1], [2], [3]])
    assert singletons(1) == S([[1]])
    with pytest.raises(ValueError):
        singletons(0)


def test_same_coalition():
    s = S([[1, 2], [3]])
    assert s.same_coalition(1, 2)
    assert not s.same_coalition(1, 3)
    assert singletons(4).same_coalition(2, 2)


def test_merge():
    assert singletons(3).merge(1, 2) == S([[1, 2], [3]])
    assert S([[1, 2], [3, 4]]).merge(2, 3) == S([[1, 2, 3, 4]])
    with pytest.raises(ValueError):
        S([[1, 2], [3]]).merge(1, 2)


def test_merge_leaves_original_untouched():
    s = singletons(3)
    s.merge(1, 3)
    assert s == singletons(3)


def test_canonical_labels_make_equal_structures_equal():
    a = CoalitionStructure.from_labels(["x", "y", "x", "z"])
    b = S([[3, 1], [4], [2]])
    assert a == b and hash(a) == hash(b)
    assert a.labels == (1, 2, 1, 4)
    assert str(a) == "{1,3}|{2}|{4}"


def test_rejects_noncanonical_labels():
    with pytest.raises(ValueError):
        CoalitionStructure((2, 2))
    with pytest.raises(ValueError):
        S([[1, 2], [2, 3]])


def test_random_structure_extremes():
    assert random_structure(5, 1, 0) == S([[1, 2, 3, 4, 5]])
    assert random_structure(5, 5, 0) == singletons(5)
    with pytest.raises(ValueError):
        random_structure(5, 6, 0)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))),
       st.integers(0, 2**32 - 1))
def test_random_structure_has_m_blocks(nm, seed):
    n, m = nm
    s = random_structure(n, m, seed)
    assert s.n == n and s.m == m
    assert sorted(i for b in s for i in b) == list(range(1, n + 1))
    assert s == random_structure(n, m, seed)


def test_random_structure_seed_42():
    s = random_structure(6, 3, 42)
    assert s.m == 3 and set().union(*s) == set(range(1, 7))


def test_bell_values():
    bells = bell_numbers(10)
    assert bells[:6] == [1, 1, 2, 5, 15, 52]
    assert bells[10] == 115975


def test_bell_triangle_matches_enumeration():
    bells = bell_numbers(9)
    for n in range(1, 10):
        assert sum(1 for _ in all_partitions(n)) == bells[n]


def test_enumeration_is_distinct():
    parts = list(all_partitions(6))
    assert len(set(parts)) == len(parts) == 203


def test_lower_bound():
    assert bell_log2_lower_bound(1) == 0
    assert bell_log2_lower_bound(3) == 3
    assert bell_log2_lower_bound(5) == 6
    with pytest.raises(UnsupportedSize):
        bell_log2_lower_bound(301)
    assert bell_log2_lower_bound(300) > 0


@given(st.integers(1, 10**30))
def test_ceil_log2(x):
    k = ceil_log2(x)
    assert 2 ** k >= x and (k == 0 or 2 ** (k - 1) < x)


def test_coalition_lookup():
    s = S([[1, 4], [2, 3, 5]])
    assert s.coalition(3) == frozenset({2, 3, 5})
    assert s.block_of(4) == 1
    for i, j in itertools.product(range(1, 6), repeat=2):
        assert s.same_coalition(i, j) == (j in s.coalition(i))
