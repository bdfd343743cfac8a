from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_isomorphic, random_tree
from treedex.enumeration import free_trees
from treedex.errors import BadLabel, BadOrder, NotATree, ParseError
from treedex.tree import (
    CanonicalCode,
    DegreeSequence,
    Tree,
    build_tree,
    canonical_code,
    centroids,
    code_sort_key,
    code_string,
    degree_sequence_of,
    format_edge_list,
    from_pruefer,
    parse_edge_list,
    parse_edge_lists,
    path_tree,
    read_edge_list,
    spider_tree,
    star_tree,
    to_pruefer,
    tree_from_code,
    write_edge_list,
)


def test_build_tree_examples():
    assert build_tree(2, [(0, 1)]) == path_tree(2)
    assert build_tree(4, [(0, 1), (1, 2), (2, 3)]) == path_tree(4)
    with pytest.raises(NotATree):
        build_tree(4, [(0, 1), (1, 2), (0, 2)])


@pytest.mark.parametrize(
    "n, edges, exc",
    [
        (3, [(0, 1)], NotATree),
        (3, [(0, 1), (0, 1)], NotATree),
        (3, [(0, 0), (1, 2)], NotATree),
        (3, [(0, 1), (1, 3)], BadLabel),
        (0, [], NotATree),
    ],
)
def test_build_tree_rejects(n, edges, exc):
    with pytest.raises(exc):
        build_tree(n, edges)


def test_single_vertex():
    t = Tree(1, ())
    assert t.degrees == (0,)
    assert code_string(t) == "()"


def test_degree_sequence_examples():
    assert degree_sequence_of(path_tree(4)).degrees == (2, 2, 1, 1)
    assert degree_sequence_of(star_tree(5)).degrees == (4, 1, 1, 1, 1)
    assert str(DegreeSequence((10,) + (2,) * 11 + (1,) * 10)) == "10,2^11,1^10"


def test_equality_ignores_edge_order_and_orientation():
    a = Tree(3, ((0, 1), (1, 2)))
    b = Tree(3, ((2, 1), (1, 0)))
    assert a == b and hash(a) == hash(b)
    assert a.edges != b.edges


def test_canonical_code_examples():
    p4 = path_tree(4)
    relabeled = build_tree(4, [(2, 0), (0, 3), (3, 1)])
    assert canonical_code(p4) == canonical_code(relabeled)
    assert canonical_code(p4) != canonical_code(star_tree(4))
    codes = {code_string(from_pruefer(s, 4)) for s in itertools.product(range(4), repeat=2)}
    assert len(codes) == 2


def test_centroids():
    assert centroids(path_tree(5)) == [2]
    assert sorted(centroids(path_tree(6))) == [2, 3]
    assert centroids(star_tree(6)) == [0]


@pytest.mark.parametrize("n", range(1, 8))
def test_code_agrees_with_brute_force_on_classes(n):
    reps = list(free_trees(n))
    for a, b in itertools.combinations(reps, 2):
        assert not brute_isomorphic(a, b)
        assert code_string(a) != code_string(b)


def test_code_agrees_with_brute_force_on_labeled_pairs():
    rng = random.Random(7)
    for _ in range(400):
        n = rng.randint(2, 7)
        a, b = random_tree(n, rng), random_tree(n, rng)
        assert (code_string(a) == code_string(b)) == brute_isomorphic(a, b)


@given(st.integers(1, 14), st.randoms(use_true_random=False))
def test_code_is_relabel_invariant(n, r):
    t = random_tree(n, r)
    perm = list(range(n))
    r.shuffle(perm)
    assert canonical_code(t.relabel(perm)) == canonical_code(t)


@given(st.integers(1, 14), st.randoms(use_true_random=False))
def test_tree_from_code_round_trip(n, r):
    t = random_tree(n, r)
    code = canonical_code(t)
    back = tree_from_code(code)
    assert back.n == n
    assert canonical_code(back) == code


def test_code_ordering_is_shortlex():
    a = CanonicalCode(b"(())")
    b = CanonicalCode(b"(()())")
    assert a < b
    assert sorted(["(()())", "(())", "()"], key=code_sort_key) == ["()", "(())", "(()())"]
    assert CanonicalCode(b"(()())").order == 3


def test_pruefer_examples():
    assert to_pruefer(path_tree(4)) == (1, 2)
    assert from_pruefer((), 2) == path_tree(2)
    assert from_pruefer((0, 0), 4) == star_tree(4)


@pytest.mark.parametrize("n", range(2, 7))
def test_pruefer_round_trip_exhaustive(n):
    seen = set()
    for seq in itertools.product(range(n), repeat=n - 2):
        t = from_pruefer(seq, n)
        assert to_pruefer(t) == seq
        assert from_pruefer(to_pruefer(t), n).edge_set == t.edge_set
        seen.add(t)
    assert len(seen) == n ** (n - 2)


@given(st.integers(2, 8), st.randoms(use_true_random=False))
def test_pruefer_round_trip_random(n, r):
    t = random_tree(n, r)
    assert from_pruefer(to_pruefer(t), n).edge_set == t.edge_set


def test_pruefer_errors():
    with pytest.raises(BadOrder):
        from_pruefer((), 1)
    with pytest.raises(BadOrder):
        from_pruefer((0,), 4)
    with pytest.raises(BadLabel):
        from_pruefer((0, 9), 4)


@given(st.integers(1, 12), st.randoms(use_true_random=False))
def test_degree_sum(n, r):
    t = random_tree(n, r)
    assert sum(t.degrees) == 2 * (n - 1)


def test_spider_tree():
    t = spider_tree([2, 1, 1])
    assert t.n == 5
    assert t.degrees[0] == 3


def test_edge_list_round_trip(tmp_path):
    t = build_tree(5, [(3, 1), (1, 0), (0, 4), (4, 2)])
    assert parse_edge_list(format_edge_list(t)).edges == t.edges
    path = tmp_path / "t.edges"
    write_edge_list(t, path)
    assert read_edge_list(path) == t


def test_edge_list_comments_and_blocks():
    text = "# two trees\n3\n0 1\n1 2\n\n2\n0 1  # trailing\n"
    trees = parse_edge_lists(text)
    assert [t.n for t in trees] == [3, 2]


@pytest.mark.parametrize("text", ["3\n0 x\n1 2\n", "3\n0 1\n", "1 2\n"])
def test_edge_list_parse_errors(text):
    with pytest.raises(ParseError):
        parse_edge_lists(text)
