"""Permutations, patterns and occurrence counting by definition."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence


class PatternError(ValueError):
    """Raised for malformed permutation text or non-bijective words."""


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of 1..n in one-line notation. The empty word is allowed."""

    word: tuple[int, ...] = ()

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise PatternError(f"{word!r} is not a permutation of 1..{len(word)}")
        object.__setattr__(self, "word", word)

    @property
    def n(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    def __getitem__(self, i):
        return self.word[i]

    def __str__(self) -> str:
        if not self.word:
            return "()"
        if self.n <= 9:
            return "".join(map(str, self.word))
        return ",".join(map(str, self.word))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    @cached_property
    def inversions(self) -> frozenset[tuple[int, int]]:
        """Pairs (i, j), 1-based with i < j, such that word[i] > word[j]."""
        w = self.word
        return frozenset(
            (i + 1, j + 1)
            for i, j in combinations(range(len(w)), 2)
            if w[i] > w[j]
        )


def standardize(values: Sequence[int]) -> Permutation:
    """The permutation having the same relative order as ``values``."""
    ranks = {v: r for r, v in enumerate(sorted(values), start=1)}
    if len(ranks) != len(values):
        raise PatternError("values must be distinct")
    return Permutation(tuple(ranks[v] for v in values))


def parse_pattern(text: str | Permutation | Sequence[int]) -> Permutation:
    """Read a permutation from ``"132"`` or ``"4,2,1,3"`` style text.

    Digit strings are only unambiguous up to n = 9; longer permutations must
    be comma separated. Sequences of ints and Permutation objects pass through.
    """
    if isinstance(text, Permutation):
        return text
    if not isinstance(text, str):
        return Permutation(tuple(text))
    s = text.strip()
    if s in ("", "()", "e"):
        return Permutation(())
    if "," in s:
        parts = [p.strip() for p in s.split(",")]
        if not all(p.isdigit() for p in parts):
            raise PatternError(f"malformed pattern text {text!r}")
        word = tuple(int(p) for p in parts)
    else:
        if not s.isdigit():
            raise PatternError(f"malformed pattern text {text!r}")
        word = tuple(int(c) for c in s)
    if len(set(word)) != len(word):
        raise PatternError(f"repeated values in {text!r}")
    if any(v < 1 or v > len(word) for v in word):
        raise PatternError(f"values out of range in {text!r}")
    return Permutation(word)


def _same_order(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(
        (a[i] < a[j]) == (b[i] < b[j])
        for i in range(len(a))
        for j in range(i + 1, len(a))
    )


def occurrences_naive(sigma, pi) -> int:
    """Number of subsequences of ``pi`` with the same relative order as ``sigma``.

    Index subsets are grown left to right and abandoned as soon as the partial
    subsequence disagrees with the pattern, so this is slow but obviously
    correct. The empty pattern occurs zero times by convention.
    """
    s = parse_pattern(sigma).word
    p = parse_pattern(pi).word
    k, n = len(s), len(p)
    if k == 0 or k > n:
        return 0

    def extend(chosen: list[int], start: int) -> int:
        t = len(chosen)
        if t == k:
            return 1
        total = 0
        for idx in range(start, n - (k - t) + 1):
            v = p[idx]
            if all((p[c] < v) == (s[r] < s[t]) for r, c in enumerate(chosen)):
                chosen.append(idx)
                total += extend(chosen, idx + 1)
                chosen.pop()
        return total

    return extend([], 0)


def avoids(pi, sigma) -> bool:
    return occurrences_naive(sigma, pi) == 0


def symmetry(pi, which: str) -> Permutation:
    """Apply ``inverse``, ``reverse`` or ``complement`` to ``pi``."""
    w = parse_pattern(pi).word
    n = len(w)
    if which == "inverse":
        inv = [0] * n
        for i, v in enumerate(w, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))
    if which == "reverse":
        return Permutation(w[::-1])
    if which == "complement":
        return Permutation(tuple(n + 1 - v for v in w))
    raise ValueError(f"unknown symmetry {which!r}")


@dataclass(frozen=True)
class Pattern:
    """A permutation together with the descent data used by the recursions.

    ``descents`` counts indices i with sigma_i > sigma_{i+1}, plus the last
    index. ``delta_set`` holds the cut points q in 1..k-1 where every entry of
    the prefix exceeds every entry of the suffix. ``max_pos`` is 1-based.
    """

    perm: Permutation
    descents: int = field(init=False)
    lam: int = field(init=False)
    max_pos: int = field(init=False)
    delta_set: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        w = self.perm.word
        k = len(w)
        if k == 0:
            raise PatternError("pattern statistics need a nonempty pattern")
        d = sum(1 for i in range(k - 1) if w[i] > w[i + 1]) + 1
        prefix_min = []
        cur = k + 1
        for v in w:
            cur = min(cur, v)
            prefix_min.append(cur)
        suffix_max = [0] * (k + 1)
        for i in range(k - 1, -1, -1):
            suffix_max[i] = max(w[i], suffix_max[i + 1])
        delta = tuple(q for q in range(1, k) if prefix_min[q - 1] > suffix_max[q])
        object.__setattr__(self, "descents", d)
        object.__setattr__(self, "lam", k + d)
        object.__setattr__(self, "max_pos", w.index(k) + 1)
        object.__setattr__(self, "delta_set", delta)

    @property
    def k(self) -> int:
        return len(self.perm)

    @property
    def word(self) -> tuple[int, ...]:
        return self.perm.word

    def prefix(self, q: int) -> Permutation:
        """Standardized sigma_1..sigma_q (empty for q = 0)."""
        return standardize(self.word[:q])

    def suffix(self, q: int) -> Permutation:
        """Standardized sigma_{q+1}..sigma_k (empty for q = k)."""
        return standardize(self.word[q:])

    def __str__(self) -> str:
        return str(self.perm)


def pattern_stats(sigma) -> Pattern:
    return Pattern(parse_pattern(sigma))


def inversion_order_leq(sigma, sigma2) -> bool:
    """True iff the inversion set of ``sigma`` is contained in that of ``sigma2``."""
    a, b = parse_pattern(sigma), parse_pattern(sigma2)
    if len(a) != len(b):
        raise ValueError("patterns must have equal length")
    return a.inversions <= b.inversions


def all_permutations(n: int) -> Iterator[Permutation]:
    for w in permutations(range(1, n + 1)):
        yield Permutation(w)


def avoiders(n: int, tau="132") -> list[Permutation]:
    """All permutations of length n avoiding ``tau`` (lexicographic order)."""
    return [p for p in all_permutations(n) if avoids(p, tau)]


def require_132_avoiding(patterns: Iterable) -> list[Pattern]:
    out = []
    for s in patterns:
        pat = s if isinstance(s, Pattern) else pattern_stats(s)
        if not avoids(pat.perm, "132"):
            raise PatternError(f"pattern {pat} contains 132")
        out.append(pat)
    return out
