"""Mixed moments E_d(prod X_sigma^k) and their asymptotic constants.

Each factor X_sigma(T) is replaced by its left/right decomposition; after
expanding the product every term is (monomial in T_L) x (monomial in T_R).
Left and right subtrees are independent, each a copy of T with probability
p = (1 - d)/2 and empty otherwise, and every nonempty monomial vanishes on the
empty tree. The two terms that reproduce the whole monomial on one side give
2p E_d M = (1 - d) E_d M, so E_d M = (1/d) * (everything else), and everything
else has strictly smaller weight.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import mpmath

from .algebra import LaurentPoly, gf_coefficient, catalan
from .expectation import P_CHILD, SymbolicConstant, gamma_half, singularity_constant
from .perms import Pattern, PatternError, Permutation, avoids, parse_pattern, pattern_stats
from .trees import cross_terms

ONE = LaurentPoly.const(1)


def _key(p: Permutation) -> tuple[int, tuple[int, ...]]:
    return (len(p), p.word)


@dataclass(frozen=True)
class Monomial:
    """A product of pattern counts, stored as sorted (pattern, multiplicity) pairs."""

    factors: tuple[tuple[Permutation, int], ...] = ()

    @classmethod
    def of(cls, items: Mapping | Iterable) -> "Monomial":
        counts: Counter = Counter()
        if isinstance(items, Mapping):
            for s, k in items.items():
                counts[parse_pattern(s)] += int(k)
        else:
            for s in items:
                counts[parse_pattern(s)] += 1
        for p, k in counts.items():
            if len(p) == 0:
                raise PatternError("empty pattern in monomial")
            if k < 0:
                raise ValueError("negative multiplicity")
        return cls(tuple(sorted(((p, k) for p, k in counts.items() if k), key=lambda t: _key(t[0]))))

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        """Read ``"12^2*213"``: factors joined by ``*``, powers by ``^``."""
        counts: Counter = Counter()
        for part in text.replace(" ", "").split("*"):
            if not part:
                raise PatternError(f"malformed monomial {text!r}")
            m = re.fullmatch(r"([0-9,]+)(?:\^(\d+))?", part)
            if not m:
                raise PatternError(f"malformed monomial factor {part!r}")
            counts[parse_pattern(m.group(1))] += int(m.group(2) or 1)
        return cls.of(counts)

    @property
    def weight(self) -> int:
        return sum(k * pattern_stats(p).lam for p, k in self.factors)

    def __bool__(self) -> bool:
        return bool(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(str(p) if k == 1 else f"{p}^{k}" for p, k in self.factors)

    def flat(self) -> tuple[Permutation, ...]:
        return tuple(p for p, k in self.factors for _ in range(k))


def _as_monomial(m) -> Monomial:
    if isinstance(m, Monomial):
        return m
    if isinstance(m, str):
        return Monomial.parse(m)
    return Monomial.of(m)


def _sorted_flat(items: Iterable[Permutation]) -> tuple[Permutation, ...]:
    return tuple(sorted(items, key=_key))


@lru_cache(maxsize=None)
def _factor_terms(p: Permutation) -> tuple[tuple[tuple[Permutation, ...], tuple[Permutation, ...]], ...]:
    """Left/right monomial pairs whose sum is X_p(T)."""
    terms = [((p,), ()), ((), (p,))]
    for a, b in cross_terms(pattern_stats(p)):
        terms.append(((a,) if len(a) else (), (b,) if len(b) else ()))
    return tuple(terms)


def expand(flat: tuple[Permutation, ...]) -> dict[tuple[tuple, tuple], int]:
    """Expand prod X_p(T) into {(left monomial, right monomial): coefficient}."""
    acc: dict[tuple[tuple, tuple], int] = {((), ()): 1}
    for p in flat:
        nxt: dict[tuple[tuple, tuple], int] = {}
        for (la, ra), c in acc.items():
            for lb, rb in _factor_terms(p):
                key = (_sorted_flat(la + lb) if lb else la, _sorted_flat(ra + rb) if rb else ra)
                nxt[key] = nxt.get(key, 0) + c
        acc = nxt
    return acc


@lru_cache(maxsize=None)
def _side(flat: tuple[Permutation, ...]) -> LaurentPoly:
    """Expectation of a monomial evaluated on one (possibly empty) subtree."""
    if not flat:
        return ONE
    return P_CHILD * _ed_flat(flat)


@lru_cache(maxsize=None)
def _ed_flat(flat: tuple[Permutation, ...]) -> LaurentPoly:
    if not flat:
        return ONE
    acc = LaurentPoly()
    for (la, ra), c in expand(flat).items():
        if (la == flat and not ra) or (ra == flat and not la):
            assert c == 1
            continue
        acc = acc + _side(la) * _side(ra) * c
    out = acc.shift(-1)
    weight = sum(pattern_stats(p).lam for p in flat)
    assert out and out.max_exp < 0, f"nonnegative powers of d survive: {out}"
    assert out.degree_inv() == weight - 1, f"degree {out.degree_inv()} != {weight - 1}"
    assert out.leading() > 0
    return out


def ed_monomial(m) -> LaurentPoly:
    """E_d of a product of pattern counts, exactly."""
    mono = _as_monomial(m)
    for p, _ in mono.factors:
        if not avoids(p, "132"):
            raise PatternError(f"pattern {p} contains 132")
    if not mono:
        return ONE
    return _ed_flat(mono.flat())


def asymptotic_mixed(m) -> SymbolicConstant:
    """lim n^(-W/2) E prod n_sigma^k(pi_n), i.e. the mixed moment of the limits."""
    mono = _as_monomial(m)
    f = ed_monomial(mono)
    return singularity_constant(f.leading(), f.degree_inv())


def exact_moment(m, n: int) -> Fraction:
    """E prod X_sigma^k(T_n) for uniform trees of size n, from the generating function."""
    return gf_coefficient(ed_monomial(m), n) / catalan(n)


# -- scalar recursions for mixed moments with X_12 --------------------------------

FAMILIES = {
    "alpha": ("123", 4),
    "beta": ("213", 5),
    "gamma": ("231", 5),
}
_ALIASES = {"a": "alpha", "α": "alpha", "b": "beta", "β": "beta", "c": "gamma", "γ": "gamma"}


def _family(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}")
    return name


def _rising(a: Fraction, m: int) -> Fraction:
    """Gamma(a + m) / Gamma(a) for rational a."""
    out = Fraction(1)
    for i in range(m):
        out *= a + i
    return out


def _tmom3_value(family: str, k: int, l: int, memo: dict) -> Fraction:
    if k < 0 or l < 0:
        return Fraction(0)
    if (k, l) in memo:
        return memo[(k, l)]
    if k == 0 and l == 0:
        return Fraction(-1, 2)

    def t(i, j):
        return _tmom3_value(family, i, j, memo)

    if family == "alpha":
        w = 4 * k + 3 * l
        v = (l + 1) * t(k - 1, l + 1) + 2 * (w - 4) * t(k, l - 1)
        v += sum(t(i, j) * t(k - i, l - j) for i in range(k + 1) for j in range(l + 1) if 0 < i + j < k + l)
    elif family == "beta":
        w = 5 * k + 3 * l
        v = 2 * (w - 6) * (w - 4) * t(k - 1, l) + 2 * (w - 4) * t(k, l - 1)
        v += sum(t(i, j) * t(k - i, l - j) for i in range(k + 1) for j in range(l + 1) if 0 < i + j < k + l)
    else:
        w = 5 * k + 3 * l
        v = 2 * (w - 4) * t(k, l - 1)
        for i in range(k + 1):
            for j in range(l + 1):
                a = Fraction(5 * i + 3 * j - 1, 2)
                # m ranges over 0..k-i so that the second index stays >= 0
                for m in range(k - i + 1):
                    if (i, j, m) in ((0, 0, 0), (k, l, 0)):
                        continue
                    v += (
                        4**m
                        * _rising(a, m)
                        * math.comb(l - j + m, m)
                        * t(i, j)
                        * t(k - i - m, l - j + m)
                    )
    memo[(k, l)] = v
    return v


_TABLE_MEMO: dict[str, dict] = {f: {} for f in FAMILIES}


@dataclass(frozen=True)
class MomentTable:
    family: str
    values: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __getitem__(self, kl: tuple[int, int]) -> Fraction:
        return self.values[kl]


def tmom3_table(family: str, kmax: int, lmax: int) -> MomentTable:
    fam = _family(family)
    memo = _TABLE_MEMO[fam]
    vals = {(k, l): _tmom3_value(fam, k, l, memo) for k in range(kmax + 1) for l in range(lmax + 1)}
    return MomentTable(fam, vals)


def tmom3_limit(family: str, k: int, l: int) -> SymbolicConstant:
    """k! l! sqrt(pi) / (2^(W-2) Gamma((W-1)/2)) times the table entry."""
    fam = _family(family)
    w = FAMILIES[fam][1] * k + 3 * l
    if w < 2:
        raise ValueError("need k + l >= 1")
    val = _tmom3_value(fam, k, l, _TABLE_MEMO[fam])
    g, g_pi = gamma_half(w - 1)
    q = Fraction(math.factorial(k) * math.factorial(l), 2 ** (w - 2)) / g * val
    return SymbolicConstant(q, 1 - g_pi, Fraction(w, 2))


def family_monomial(family: str, k: int, l: int) -> Monomial:
    fam = _family(family)
    return Monomial.of({FAMILIES[fam][0]: k, "12": l})


# -- derived statistics -----------------------------------------------------------


def _mp(c: SymbolicConstant) -> mpmath.mpf:
    return mpmath.mpf(c.q.numerator) / c.q.denominator * mpmath.sqrt(mpmath.pi) ** c.pi_half_power


def skewness(sigma) -> float:
    """Normalized third central moment of the limit of n_sigma / n^(lambda/2).

    Returns nan when the limit is deterministic (zero variance).
    """
    sig = sigma if isinstance(sigma, Pattern) else pattern_stats(sigma)
    m1 = asymptotic_mixed({sig.perm: 1})
    m2 = asymptotic_mixed({sig.perm: 2})
    m3 = asymptotic_mixed({sig.perm: 3})
    sq = SymbolicConstant(m1.q**2, 2 * m1.pi_half_power)
    if sq.q == m2.q and (sq.pi_half_power == m2.pi_half_power or m2.q == 0):
        return math.nan
    with mpmath.workdps(40):
        a, b, c = _mp(m1), _mp(m2), _mp(m3)
        var = b - a**2
        return float((c - 3 * a * b + 2 * a**3) / var**1.5)


def variance_limit(sigma) -> float:
    sig = sigma if isinstance(sigma, Pattern) else pattern_stats(sigma)
    m1 = asymptotic_mixed({sig.perm: 1})
    m2 = asymptotic_mixed({sig.perm: 2})
    return m2.value - m1.value**2
