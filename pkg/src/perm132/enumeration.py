"""Exhaustive enumeration of binary trees of size n, with exact statistics.

Trees come out ordered by left-subtree size (0, 1, ..., n-1), then
recursively by the left and right subtrees. Statistics are exact rationals.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .algebra import catalan
from .perms import Permutation, avoids, parse_pattern
from .trees import BinaryTree, CountProgram, count_program, join

DEFAULT_CAP = 12


class EnumerationCapError(ValueError):
    pass


def _check_cap(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise EnumerationCapError(f"n={n} exceeds the enumeration cap {cap} (C_n={catalan(n)})")


def enumerate_trees(n: int, cap: int = 14) -> Iterator[BinaryTree]:
    """Every binary tree with n nodes, once each."""
    _check_cap(n, cap)
    yield from _trees(n)


def _trees(n: int) -> Iterator[BinaryTree]:
    if n == 0:
        yield BinaryTree()
        return
    for i in range(n):
        for lt in _trees_cached(i):
            for rt in _trees_cached(n - 1 - i):
                yield join(lt, rt)


@lru_cache(maxsize=16)
def _trees_cached(n: int) -> tuple[BinaryTree, ...]:
    return tuple(_trees(n))


def count_vectors(n: int, program: CountProgram, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """Count vectors (ordered as ``program.patterns``) of all trees of size n.

    Same order as :func:`enumerate_trees`; only the root step of the
    left/right recursion is applied per tree, reusing the vectors of smaller
    sizes.
    """
    _check_cap(n, cap)
    return list(_vectors(program, n))


@lru_cache(maxsize=64)
def _vectors(program: CountProgram, n: int) -> tuple[tuple[int, ...], ...]:
    width = len(program.patterns)
    if n == 0:
        return ((0,) * width,)
    out = []
    terms = program.terms
    for i in range(n):
        lefts = _vectors(program, i)
        rights = _vectors(program, n - 1 - i)
        for lv in lefts:
            for rv in rights:
                cur = []
                for s, ts in enumerate(terms):
                    acc = lv[s] + rv[s]
                    for a, b in ts:
                        acc += (lv[a] if a >= 0 else 1) * (rv[b] if b >= 0 else 1)
                    cur.append(acc)
                out.append(tuple(cur))
    return tuple(out)


def _program_for(patterns) -> tuple[CountProgram, list[int]]:
    perms = [parse_pattern(s) for s in patterns]
    prog = count_program(perms)
    return prog, [prog.index[p] for p in perms]


def exact_mean(sigma, n: int, cap: int = DEFAULT_CAP) -> Fraction:
    """Average of X_sigma over all trees of size n."""
    return exact_mixed_moment({sigma: 1}, n, cap)


def exact_means(patterns, n: int, cap: int = DEFAULT_CAP) -> dict[Permutation, Fraction]:
    """Exact means for several patterns from one enumeration."""
    prog, idx = _program_for(patterns)
    vecs = count_vectors(n, prog, cap)
    total = len(vecs)
    return {
        prog.patterns[i]: Fraction(sum(v[i] for v in vecs), total) for i in idx
    }


def exact_mixed_moment(monomial, n: int, cap: int = DEFAULT_CAP) -> Fraction:
    """Average of prod X_sigma^k over all trees of size n.

    ``monomial`` is a mapping pattern -> power, or a
    :class:`perm132.moments.Monomial`.
    """
    factors = getattr(monomial, "factors", None)
    items = list(factors) if factors is not None else list(monomial.items())
    # a pattern containing 132 never occurs in a tree permutation
    if any(not avoids(parse_pattern(s), "132") for s, k in items if k):
        _check_cap(n, cap)
        return Fraction(0)
    prog, idx = _program_for([s for s, _ in items])
    powers = [int(k) for _, k in items]
    vecs = count_vectors(n, prog, cap)
    total = 0
    for v in vecs:
        prod = 1
        for i, k in zip(idx, powers):
            prod *= v[i] ** k
        total += prod
    return Fraction(total, len(vecs))


def exact_variance(sigma, n: int, cap: int = DEFAULT_CAP) -> Fraction:
    m1 = exact_mixed_moment({sigma: 1}, n, cap)
    m2 = exact_mixed_moment({sigma: 2}, n, cap)
    return m2 - m1 * m1


def exact_distribution(sigma, n: int, cap: int = DEFAULT_CAP) -> dict[int, int]:
    """Histogram {count: number of trees} of X_sigma over trees of size n."""
    p = parse_pattern(sigma)
    if not avoids(p, "132"):
        _check_cap(n, cap)
        return {0: catalan(n)}
    prog, idx = _program_for([p])
    hist = Counter(v[idx[0]] for v in count_vectors(n, prog, cap))
    return dict(sorted(hist.items()))
