from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from perm132.perms import (
    Permutation,
    PatternError,
    all_permutations,
    avoiders,
    avoids,
    inversion_order_leq,
    occurrences_naive,
    parse_pattern,
    pattern_stats,
    standardize,
    symmetry,
)

from strategies import permutations_of


def brute_count(sigma, pi):
    k = len(sigma)
    return sum(standardize(sub) == sigma for sub in combinations(pi.word, k))


@pytest.mark.parametrize("text, word", [("132", (1, 3, 2)), ("1", (1,)), ("4,2,1,3", (4, 2, 1, 3)), ("", ())])
def test_parse(text, word):
    assert parse_pattern(text).word == word


@pytest.mark.parametrize("text", ["12a", "112", "13", "0", "1,,2", "1,3", "2,2"])
def test_parse_rejects(text):
    with pytest.raises(PatternError):
        parse_pattern(text)


def test_long_permutations_print_with_commas():
    p = parse_pattern("10,9,8,7,6,5,4,3,2,1")
    assert str(p) == "10,9,8,7,6,5,4,3,2,1"
    assert parse_pattern(str(p)) == p


def test_permutation_validates():
    with pytest.raises(PatternError):
        Permutation((1, 1))


def test_occurrence_examples():
    assert occurrences_naive("12", "123") == 3
    assert occurrences_naive("21", "123456") == 0
    assert occurrences_naive("12", "213") == 2
    assert occurrences_naive("", "213") == 0
    assert occurrences_naive("1234", "21") == 0


def test_avoids_examples():
    assert avoids("4213", "132")
    assert not avoids("132", "132")
    assert avoids("", "12")


@given(permutations_of(7), permutations_of(4, 1))
def test_naive_matches_subset_enumeration(pi, sigma):
    assert occurrences_naive(sigma, pi) == brute_count(sigma, pi)


def test_pattern_counts_sum_to_binomial():
    for n in range(8):
        for k in range(1, min(n, 4) + 1):
            pats = list(all_permutations(k))
            for pi in all_permutations(n):
                assert sum(occurrences_naive(s, pi) for s in pats) == comb(n, k)


def test_linear_identity_for_12():
    # each triple contributes to the increasing pairs it contains
    for n in range(8):
        for pi in all_permutations(n):
            c = {s: occurrences_naive(s, pi) for s in ("12", "123", "132", "213", "231", "312")}
            lhs = (n - 2) * c["12"]
            rhs = 3 * c["123"] + 2 * c["132"] + 2 * c["213"] + c["231"] + c["312"]
            assert lhs == rhs


def test_symmetry_examples():
    assert symmetry("231", "inverse") == parse_pattern("312")
    assert symmetry("132", "reverse") == parse_pattern("231")
    assert symmetry("132", "complement") == parse_pattern("312")
    with pytest.raises(ValueError):
        symmetry("12", "rotate")


@given(permutations_of(7), permutations_of(4, 1), st.sampled_from(["inverse", "reverse", "complement"]))
def test_symmetries_preserve_counts(pi, sigma, which):
    assert occurrences_naive(symmetry(sigma, which), symmetry(pi, which)) == occurrences_naive(sigma, pi)


@given(permutations_of(6))
def test_symmetries_are_involutions(pi):
    for which in ("inverse", "reverse", "complement"):
        assert symmetry(symmetry(pi, which), which) == pi


@pytest.mark.parametrize(
    "sigma, d, lam, m, delta",
    [("231", 2, 5, 2, {2}), ("312", 2, 5, 1, {1}), ("4321", 4, 8, 1, {1, 2, 3}), ("1234", 1, 5, 4, set()), ("12", 1, 3, 2, set())],
)
def test_pattern_stats_examples(sigma, d, lam, m, delta):
    s = pattern_stats(sigma)
    assert (s.descents, s.lam, s.max_pos, set(s.delta_set)) == (d, lam, m, delta)


@given(permutations_of(7, 1))
def test_pattern_stats_invariants(p):
    s = pattern_stats(p)
    k = len(p)
    assert 1 <= s.descents <= k
    assert k + 1 <= s.lam <= 2 * k
    assert (s.lam == k + 1) == (p.word == tuple(range(1, k + 1)))
    assert (s.lam == 2 * k) == (p.word == tuple(range(k, 0, -1)))
    for q in s.delta_set:
        assert p[q - 1] > p[q]
        assert min(p.word[:q]) > max(p.word[q:])
    if s.max_pos == k:
        assert not s.delta_set
    elif avoids(p, "132"):
        assert s.max_pos in s.delta_set


def test_inversion_order_examples():
    for k in range(1, 5):
        inc = tuple(range(1, k + 1))
        dec = tuple(range(k, 0, -1))
        for s in avoiders(k):
            assert inversion_order_leq(inc, s)
            assert inversion_order_leq(s, dec)
    assert not inversion_order_leq("213", "231")
    assert not inversion_order_leq("231", "213")
    with pytest.raises(ValueError):
        inversion_order_leq("12", "123")


def test_inversion_order_is_partial_order():
    for k in range(1, 5):
        ps = avoiders(k)
        for a in ps:
            assert inversion_order_leq(a, a)
            for b in ps:
                if a != b and inversion_order_leq(a, b):
                    assert not inversion_order_leq(b, a)
                for c in ps:
                    if inversion_order_leq(a, b) and inversion_order_leq(b, c):
                        assert inversion_order_leq(a, c)


def test_avoider_counts_are_catalan():
    assert [len(avoiders(n)) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
