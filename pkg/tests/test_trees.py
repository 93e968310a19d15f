from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from perm132.enumeration import enumerate_trees
from perm132.perms import PatternError, avoiders, avoids, occurrences_naive, parse_pattern
from perm132.trees import (
    BinaryTree,
    SparseTableMin,
    count_occurrences_tree,
    count_program,
    from_shape,
    height_profile,
    join,
    perm_to_tree,
    subpattern_closure,
    tree_to_perm,
)

from strategies import trees


def closure_strs(sigmas):
    return {str(p) for p in subpattern_closure(sigmas)}


def test_single_node():
    t = perm_to_tree("1")
    assert t.size == 1 and t.to_parens() == "(,)"
    assert tree_to_perm(t) == parse_pattern("1")


def test_decreasing_is_right_spine():
    t = perm_to_tree("54321")
    assert t.to_parens() == "(,(,(,(,(,)))))"
    assert tree_to_perm(t) == parse_pattern("54321")


def test_213_has_left_subtree_21():
    t = perm_to_tree("213")
    lt, rt = t.subtrees()
    assert t.root == 2 and rt.size == 0
    assert tree_to_perm(lt) == parse_pattern("21")


def test_rejects_132():
    with pytest.raises(PatternError):
        perm_to_tree("2413")


def test_round_trip_and_bijection():
    for n in range(9):
        images = {perm_to_tree(p) for p in avoiders(n)}
        assert len(images) == len(avoiders(n))
        for t in enumerate_trees(n):
            pi = tree_to_perm(t)
            assert avoids(pi, "132")
            assert perm_to_tree(pi) == t
        assert images == set(enumerate_trees(n))


@given(trees())
def test_parens_round_trip(t):
    assert BinaryTree.from_parens(t.to_parens()) == t


@given(trees(), trees())
def test_join_subtrees(a, b):
    t = join(a, b)
    assert t.subtrees() == (a, b)
    assert t.size == 1 + a.size + b.size


def test_closure_examples():
    assert closure_strs(["12"]) == {"12", "1"}
    assert closure_strs(["231"]) == {"231", "12", "1"}
    assert closure_strs(["1"]) == {"1"}
    with pytest.raises(PatternError):
        subpattern_closure(["132"])


def test_counts_for_213_tree():
    c = count_occurrences_tree(perm_to_tree("213"), ["213", "12", "21"])
    assert (c[parse_pattern("213")], c[parse_pattern("12")], c[parse_pattern("21")]) == (1, 2, 1)


def test_recursion_matches_naive_exhaustively():
    pats = [p for k in range(1, 5) for p in avoiders(k)]
    prog = count_program(pats)
    for n in range(8):
        for t in enumerate_trees(n):
            pi = tree_to_perm(t)
            got = count_occurrences_tree(t, (), prog)
            for p in pats:
                assert got[p] == occurrences_naive(p, pi)


@given(trees(40))
def test_size_and_complement_identities(t):
    c = count_occurrences_tree(t, ["1", "12", "21"])
    n = t.size
    assert c[parse_pattern("1")] == n
    assert c[parse_pattern("21")] == comb(n, 2) - c[parse_pattern("12")]


@given(trees(30), st.integers(1, 4))
def test_counts_over_length_k_sum_to_binomial(t, k):
    pats = avoiders(k)
    c = count_occurrences_tree(t, pats)
    assert sum(c[p] for p in pats) == comb(t.size, k)


@given(trees(30))
def test_three_pattern_recursions_at_root(t):
    # the recursions for patterns of length at most 3, written out by hand
    if t.size == 0:
        return
    lt, rt = t.subtrees()
    pats = ["1", "12", "21", "123", "213", "231", "312", "321"]
    X = {s: count_occurrences_tree(t, pats)[parse_pattern(s)] for s in pats}
    L = {s: count_occurrences_tree(lt, pats)[parse_pattern(s)] for s in pats}
    R = {s: count_occurrences_tree(rt, pats)[parse_pattern(s)] for s in pats}
    assert X["1"] == L["1"] + R["1"] + 1
    assert X["12"] == L["12"] + R["12"] + L["1"]
    assert X["21"] == L["21"] + R["21"] + L["1"] * R["1"] + R["1"]
    assert X["123"] == L["123"] + R["123"] + L["12"]
    assert X["213"] == L["213"] + R["213"] + L["21"]
    assert X["231"] == L["231"] + R["231"] + L["12"] * R["1"] + L["1"] * R["1"]
    assert X["312"] == L["312"] + R["312"] + L["1"] * R["12"] + R["12"]
    assert X["321"] == L["321"] + R["321"] + L["21"] * R["1"] + L["1"] * R["21"] + R["21"]


def test_height_profile_examples():
    hp = height_profile(perm_to_tree("1"))
    assert hp.h == (0,) and hp.h_left == (0,)
    n = 6
    chain = from_shape(None)
    for _ in range(n):
        chain = join(chain, BinaryTree())
    hp = height_profile(chain)
    assert hp.h == tuple(range(n - 1, -1, -1))
    assert hp.h_left == tuple(range(n - 1, -1, -1))
    with pytest.raises(ValueError):
        height_profile(BinaryTree())


@given(trees(40).filter(lambda t: t.size > 0))
def test_height_profile_invariants(t):
    hp = height_profile(t)
    n = t.size
    assert all(0 <= a <= b <= n - 1 for a, b in zip(hp.h_left, hp.h))
    assert hp.h[t.root] == 0
    assert hp.range_min(1, n) == 0
    for i in range(1, n + 1):
        for j in range(i, min(n, i + 5) + 1):
            assert hp.range_min(i, j) == min(hp.h[i - 1 : j])
            assert hp.range_min(i, j, left=True) == min(hp.h_left[i - 1 : j])


def test_left_heights_sum_to_x12():
    prog = count_program(["12"])
    for n in range(1, 9):
        for t in enumerate_trees(n):
            assert sum(height_profile(t).h_left) == count_occurrences_tree(t, (), prog)[parse_pattern("12")]


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=60), st.data())
def test_sparse_table(values, data):
    table = SparseTableMin(values)
    i = data.draw(st.integers(0, len(values) - 1))
    j = data.draw(st.integers(i, len(values) - 1))
    assert table.query(i, j) == min(values[i : j + 1])
    with pytest.raises(ValueError):
        SparseTableMin(np.array([]))
