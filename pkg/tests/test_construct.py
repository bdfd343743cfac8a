from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from treedex.construct import (
    PartialDegreeSpec,
    complete_with_leaves,
    extremal_construction,
    extremal_leaf_count,
    majorizes,
    parse_degree_sequence,
    realize_canonical,
    sequence_from_text,
    tree_sequences,
)
from treedex.errors import IncomparableLength, Infeasible, NotRealizable, ParseError
from treedex.tree import DegreeSequence, degree_sequence_of

# partitions of n - 2 into at most n parts, for n = 2..10 (OEIS A000041 at n-2)
PARTITIONS = {2: 1, 3: 1, 4: 2, 5: 3, 6: 5, 7: 7, 8: 11, 9: 15, 10: 22}


def test_parse_examples():
    spec = parse_degree_sequence("2^11,10")
    assert spec.entries == ((10, 1), (2, 11))
    assert parse_degree_sequence(" 3 , 2 ^ 2 ").entries == ((3, 1), (2, 2))
    assert parse_degree_sequence("2,2,3").entries == ((3, 1), (2, 2))


@pytest.mark.parametrize("text", ["", "  ", "2^", "^3", "a", "2,,3", "0", "2^0", "2^-1", "2.5"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_degree_sequence(text)


def test_partial_spec_invariants():
    with pytest.raises(ValueError):
        PartialDegreeSpec(((2, 1), (2, 3)))
    with pytest.raises(ValueError):
        PartialDegreeSpec(((2, 0),))


def test_leaf_completion_examples():
    d = sequence_from_text("2^11,10")
    assert d.n == 22 and d.degrees.count(1) == 10
    assert str(d) == "10,2^11,1^10"
    assert sequence_from_text("2^18,3,10").n == 31
    assert sequence_from_text("3").degrees == (3, 1, 1, 1)
    assert sequence_from_text("3,2,2,1,1,1").degrees == (3, 2, 2, 1, 1, 1)
    assert sequence_from_text("3,2^2", complete=False).degrees == (3, 2, 2)


def test_leaf_completion_infeasible():
    with pytest.raises(Infeasible):
        complete_with_leaves(parse_degree_sequence("3,1"))


@pytest.mark.parametrize("n", range(2, 9))
def test_realize_canonical_exhaustive(n):
    for d in tree_sequences(n):
        assert degree_sequence_of(realize_canonical(d)) == d


def test_realize_canonical_random_sample():
    rng = random.Random(3)
    for _ in range(1000):
        n = rng.randint(2, 12)
        word = [rng.randrange(n) for _ in range(n - 2)]
        degs = [1 + word.count(v) for v in range(n)]
        d = DegreeSequence(tuple(degs))
        assert degree_sequence_of(realize_canonical(d)) == d


def test_realize_canonical_is_breadth_first():
    t = realize_canonical(DegreeSequence((3, 2, 2, 1, 1, 1)))
    assert t.edges == ((0, 1), (0, 2), (0, 3), (1, 4), (2, 5))


def test_realize_canonical_rejects():
    with pytest.raises(NotRealizable):
        realize_canonical(DegreeSequence((3, 3, 1)))


def test_tree_sequences_counts():
    for n, count in PARTITIONS.items():
        seqs = tree_sequences(n)
        assert len(seqs) == count
        assert len(set(seqs)) == count
        assert all(d.is_tree_realizable and d.n == n for d in seqs)


def test_extremal_construction_example():
    t = extremal_construction(2, 3, 4, 1)
    assert t.n == 9
    assert sorted(t.degrees, reverse=True) == [3, 3, 2, 2, 2, 1, 1, 1, 1]


@given(st.integers(0, 6), st.integers(0, 6), st.integers(1, 4))
def test_extremal_construction_multiset(x, y, mu):
    if x + y == 0:
        return
    leaves = extremal_leaf_count(x, y, mu)
    try:
        t = extremal_construction(x, y, leaves, mu)
    except Infeasible:
        # only a lone spine vertex of too small a degree can fail
        assert x + y == 1
        return
    expected = sorted([mu + 2] * x + [mu + 1] * y + [1] * leaves, reverse=True)
    assert sorted(t.degrees, reverse=True) == expected


def test_extremal_construction_rejects():
    with pytest.raises(Infeasible):
        extremal_construction(2, 3, 5, 1)
    with pytest.raises(Infeasible):
        extremal_construction(1, 1, 1, 0)


def test_majorization_examples():
    star, p4 = DegreeSequence((3, 1, 1, 1)), DegreeSequence((2, 2, 1, 1))
    assert majorizes(star, p4)
    assert not majorizes(p4, star)
    for n in range(2, 10):
        top = DegreeSequence((n - 1,) + (1,) * (n - 1))
        assert all(majorizes(top, d) for d in tree_sequences(n))
    with pytest.raises(IncomparableLength):
        majorizes(star, DegreeSequence((1, 1)))
    with pytest.raises(IncomparableLength):
        majorizes(DegreeSequence((3, 1)), DegreeSequence((2, 1)))


@pytest.mark.parametrize("n", range(2, 9))
def test_majorization_is_partial_order(n):
    seqs = tree_sequences(n)
    rel = {(a, b): majorizes(a, b) for a in seqs for b in seqs}
    for a in seqs:
        assert rel[a, a]
    for a, b in itertools.product(seqs, repeat=2):
        if a != b:
            assert not (rel[a, b] and rel[b, a])
    for a, b, c in itertools.product(seqs, repeat=3):
        if rel[a, b] and rel[b, c]:
            assert rel[a, c]
