"""Binary trees in bijection with 132-avoiding permutations.

Nodes are identified with their inorder position 0..n-1, so a tree is just
two child arrays plus a root index (-1 marks a missing child or empty tree).
With that convention two trees are equal iff their arrays are equal, and the
permutation of a tree is read off by labelling node ids directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .perms import Pattern, PatternError, Permutation, avoids, parse_pattern, pattern_stats

EMPTY = -1


@dataclass(frozen=True)
class BinaryTree:
    left: tuple[int, ...] = ()
    right: tuple[int, ...] = ()
    root: int = EMPTY

    @property
    def size(self) -> int:
        return len(self.left)

    def __len__(self) -> int:
        return len(self.left)

    @cached_property
    def subtree_sizes(self) -> tuple[int, ...]:
        sizes = [0] * self.size
        for v in self.postorder():
            sizes[v] = 1
            if self.left[v] != EMPTY:
                sizes[v] += sizes[self.left[v]]
            if self.right[v] != EMPTY:
                sizes[v] += sizes[self.right[v]]
        return tuple(sizes)

    def postorder(self) -> list[int]:
        out: list[int] = []
        if self.root == EMPTY:
            return out
        stack = [(self.root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                out.append(v)
                continue
            stack.append((v, True))
            if self.right[v] != EMPTY:
                stack.append((self.right[v], False))
            if self.left[v] != EMPTY:
                stack.append((self.left[v], False))
        return out

    def subtrees(self) -> tuple["BinaryTree", "BinaryTree"]:
        """The left and right subtrees of the root, renumbered from 0."""
        if self.root == EMPTY:
            raise ValueError("the empty tree has no subtrees")
        r = self.root
        return _slice(self, 0, r), _slice(self, r + 1, self.size)

    def to_parens(self) -> str:
        """Nested parentheses: ``(L,R)`` per node, empty string for no tree."""

        def rec(v: int) -> str:
            if v == EMPTY:
                return ""
            return "(" + rec(self.left[v]) + "," + rec(self.right[v]) + ")"

        return rec(self.root)

    @classmethod
    def from_parens(cls, text: str) -> "BinaryTree":
        pos = 0
        # nested lists [left, right] or None
        def parse():
            nonlocal pos
            if pos >= len(text) or text[pos] in ",)":
                return None
            if text[pos] != "(":
                raise ValueError(f"unexpected {text[pos]!r} at {pos}")
            pos += 1
            lt = parse()
            if text[pos] != ",":
                raise ValueError(f"expected ',' at {pos}")
            pos += 1
            rt = parse()
            if text[pos] != ")":
                raise ValueError(f"expected ')' at {pos}")
            pos += 1
            return (lt, rt)

        shape = parse()
        if pos != len(text):
            raise ValueError("trailing characters in tree text")
        return from_shape(shape)

    def __str__(self) -> str:
        return self.to_parens()


def _slice(t: BinaryTree, lo: int, hi: int) -> BinaryTree:
    """Subtree occupying inorder positions lo..hi-1, shifted to start at 0."""
    if lo == hi:
        return BinaryTree()

    def shift(c: int) -> int:
        return EMPTY if c == EMPTY else c - lo

    left = tuple(shift(c) for c in t.left[lo:hi])
    right = tuple(shift(c) for c in t.right[lo:hi])
    # the subtree root is the unique node in range that is nobody's child
    children = {c for c in left + right if c != EMPTY}
    root = next(v for v in range(hi - lo) if v not in children)
    return BinaryTree(left, right, root)


def from_shape(shape) -> BinaryTree:
    """Build from nested ``(left, right)`` tuples with ``None`` for empty."""
    left: list[int] = []
    right: list[int] = []

    def rec(s) -> int:
        if s is None:
            return EMPTY
        lt = rec(s[0])
        v = len(left)
        left.append(lt)
        right.append(EMPTY)
        right[v] = rec(s[1])
        return v

    root = rec(shape)
    return BinaryTree(tuple(left), tuple(right), root)


def join(lt: BinaryTree, rt: BinaryTree) -> BinaryTree:
    """The tree with a new root whose subtrees are ``lt`` and ``rt``."""
    a = lt.size
    off = a + 1

    def shift(c: int, by: int) -> int:
        return EMPTY if c == EMPTY else c + by

    left = lt.left + (lt.root,) + tuple(shift(c, off) for c in rt.left)
    right = lt.right + (shift(rt.root, off),) + tuple(shift(c, off) for c in rt.right)
    return BinaryTree(left, right, a)


def perm_to_tree(pi) -> BinaryTree:
    """Root at the maximum, left subtree from the prefix, right from the suffix."""
    w = parse_pattern(pi).word
    n = len(w)
    left = [EMPTY] * n
    right = [EMPTY] * n
    if n == 0:
        return BinaryTree()

    def build(lo: int, hi: int) -> int:
        if lo >= hi:
            return EMPTY
        seg = w[lo:hi]
        r = lo + seg.index(max(seg))
        if r > lo and r + 1 < hi and min(w[lo:r]) < max(w[r + 1:hi]):
            raise PatternError(f"{Permutation(w)} contains 132")
        left[r] = build(lo, r)
        right[r] = build(r + 1, hi)
        return r

    root = build(0, n)
    return BinaryTree(tuple(left), tuple(right), root)


def tree_to_perm(t: BinaryTree) -> Permutation:
    """Inverse of :func:`perm_to_tree`.

    The root gets the largest label, the left subtree the next block of
    labels and the right subtree the smallest ones.
    """
    n = t.size
    word = [0] * n
    sizes = t.subtree_sizes
    stack = [(t.root, n)] if n else []
    while stack:
        v, top = stack.pop()
        word[v] = top
        rs = sizes[t.right[v]] if t.right[v] != EMPTY else 0
        if t.left[v] != EMPTY:
            stack.append((t.left[v], top - 1))
        if t.right[v] != EMPTY:
            stack.append((t.right[v], top - sizes[v] + rs))
    return Permutation(tuple(word))


# -- occurrence counting through the left/right recursion ---------------------


def _as_pattern(s) -> Pattern:
    return s if isinstance(s, Pattern) else pattern_stats(s)


def cross_terms(sigma: Pattern) -> list[tuple[Permutation, Permutation]]:
    """Products X_a(T_L) * X_b(T_R) contributing to X_sigma(T).

    One term per cut q in the delta set, plus one for occurrences that use the
    root, which plays the role of the maximum. An empty side means the factor
    is the constant 1.
    """
    m = sigma.max_pos
    terms = [(sigma.prefix(q), sigma.suffix(q)) for q in sigma.delta_set]
    terms.append((sigma.prefix(m - 1), sigma.suffix(m)))
    return terms


def subpattern_closure(sigmas: Iterable) -> set[Permutation]:
    pending = [_as_pattern(s) for s in sigmas]
    for p in pending:
        if not avoids(p.perm, "132"):
            raise PatternError(f"pattern {p} contains 132")
    seen: set[Permutation] = set()
    while pending:
        p = pending.pop()
        if p.perm in seen:
            continue
        seen.add(p.perm)
        for a, b in cross_terms(p):
            for x in (a, b):
                if len(x) and x not in seen:
                    pending.append(pattern_stats(x))
    return seen


@dataclass(frozen=True)
class CountProgram:
    """The closure in increasing length, with cross terms as index pairs.

    Index -1 in a term stands for the empty pattern (constant factor 1).
    """

    patterns: tuple[Permutation, ...]
    terms: tuple[tuple[tuple[int, int], ...], ...]

    @cached_property
    def index(self) -> dict[Permutation, int]:
        return {p: i for i, p in enumerate(self.patterns)}

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Flat (offsets, pairs) arrays for the compiled kernels."""
        offsets = np.zeros(len(self.terms) + 1, dtype=np.int64)
        pairs = []
        for i, ts in enumerate(self.terms):
            offsets[i + 1] = offsets[i] + len(ts)
            pairs.extend(ts)
        return offsets, np.array(pairs, dtype=np.int64).reshape(-1, 2)


def count_program(sigmas: Iterable) -> CountProgram:
    closure = sorted(subpattern_closure(sigmas), key=lambda p: (len(p), p.word))
    idx = {p: i for i, p in enumerate(closure)}
    terms = []
    for p in closure:
        ts = []
        for a, b in cross_terms(pattern_stats(p)):
            ts.append((idx[a] if len(a) else EMPTY, idx[b] if len(b) else EMPTY))
        terms.append(tuple(ts))
    return CountProgram(tuple(closure), tuple(terms))


def count_occurrences_tree(t: BinaryTree, sigmas, program: CountProgram | None = None) -> dict[Permutation, int]:
    """X_sigma(T) for every sigma in the closure of ``sigmas``, exactly.

    One post-order pass; each node combines the count vectors of its two
    subtrees (the empty subtree has all counts 0).
    """
    prog = program or count_program(sigmas)
    width = len(prog.patterns)
    zero = [0] * width
    if t.root == EMPTY:
        return dict(zip(prog.patterns, zero))
    vals: list[list[int] | None] = [None] * t.size
    for v in t.postorder():
        lv = vals[t.left[v]] if t.left[v] != EMPTY else zero
        rv = vals[t.right[v]] if t.right[v] != EMPTY else zero
        cur = [0] * width
        for s, ts in enumerate(prog.terms):
            acc = lv[s] + rv[s]
            for a, b in ts:
                acc += (lv[a] if a != EMPTY else 1) * (rv[b] if b != EMPTY else 1)
            cur[s] = acc
        vals[v] = cur
        if t.left[v] != EMPTY:
            vals[t.left[v]] = None
        if t.right[v] != EMPTY:
            vals[t.right[v]] = None
    return dict(zip(prog.patterns, vals[t.root]))


# -- height profiles ----------------------------------------------------------


class SparseTableMin:
    """Range minimum in O(1) per query after O(n log n) preprocessing."""

    def __init__(self, data):
        a = np.asarray(data)
        n = len(a)
        if n == 0:
            raise ValueError("empty data")
        levels = [a]
        span = 1
        while 2 * span <= n:
            prev = levels[-1]
            levels.append(np.minimum(prev[:-span], prev[span:]))
            span *= 2
        self.table = levels

    def query(self, i: int, j: int):
        """Minimum of data[i..j], 0-based inclusive, i <= j."""
        if i > j:
            raise ValueError("empty range")
        level = (j - i + 1).bit_length() - 1
        row = self.table[level]
        return min(row[i], row[j - (1 << level) + 1])


@dataclass(frozen=True)
class HeightProfile:
    """Depth and left-height of every node, listed in inorder."""

    h: tuple[int, ...]
    h_left: tuple[int, ...]

    @cached_property
    def _rmq_h(self) -> SparseTableMin:
        return SparseTableMin(self.h)

    @cached_property
    def _rmq_left(self) -> SparseTableMin:
        return SparseTableMin(self.h_left)

    def range_min(self, i: int, j: int, left: bool = False) -> int:
        """min over l in [i, j] of h(l) (or h_L(l)); positions are 1-based."""
        if not 1 <= i <= j <= len(self.h):
            raise IndexError(f"bad range [{i}, {j}]")
        rmq = self._rmq_left if left else self._rmq_h
        return int(rmq.query(i - 1, j - 1))

    def normalized(self, left: bool = True) -> np.ndarray:
        """n^{-1/2} times the inorder profile."""
        arr = np.asarray(self.h_left if left else self.h, dtype=float)
        return arr / np.sqrt(len(arr))


def height_profile(t: BinaryTree) -> HeightProfile:
    if t.root == EMPTY:
        raise ValueError("height profile of the empty tree")
    h = [0] * t.size
    hl = [0] * t.size
    stack = [t.root]
    while stack:
        v = stack.pop()
        if t.left[v] != EMPTY:
            c = t.left[v]
            h[c] = h[v] + 1
            hl[c] = hl[v] + 1
            stack.append(c)
        if t.right[v] != EMPTY:
            c = t.right[v]
            h[c] = h[v] + 1
            hl[c] = hl[v]
            stack.append(c)
    return HeightProfile(tuple(h), tuple(hl))


def counts_by_pattern(counts: Mapping[Permutation, int], sigmas) -> dict[str, int]:
    return {str(parse_pattern(s)): counts[parse_pattern(s)] for s in sigmas}
