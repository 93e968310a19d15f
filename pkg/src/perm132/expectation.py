"""Expectations under the subcritical Galton-Watson tree and their asymptotics.

For the binary Galton-Watson tree where each potential child exists with
probability (1 - d)/2, the expectation E_d X_sigma is a polynomial in 1/d.
Its coefficients encode the finite-n means over uniform 132-avoiding
permutations (see :func:`perm132.algebra.gf_from_ed`), and its leading term
gives the growth constant of the mean.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import D_INV, LaurentPoly, format_fraction
from .perms import Pattern, PatternError, Permutation, avoids, parse_pattern, pattern_stats

# (1 - d)^2 / (4 d), the weight of a product of a left and a right expectation
CROSS = LaurentPoly({-1: Fraction(1, 4), 0: Fraction(-1, 2), 1: Fraction(1, 4)})
# (1/d - 1) / 2
HALF_GAP = LaurentPoly({-1: Fraction(1, 2), 0: Fraction(-1, 2)})
# p = (1 - d) / 2, probability that a given child exists
P_CHILD = LaurentPoly({0: Fraction(1, 2), 1: Fraction(-1, 2)})


@dataclass(frozen=True)
class SymbolicConstant:
    """The number q * pi**(pi_half_power/2), attached to a power n**n_exponent."""

    q: Fraction
    pi_half_power: int = 0
    n_exponent: Fraction = Fraction(0)

    @property
    def value(self) -> float:
        return float(self.q) * math.pi ** (self.pi_half_power / 2)

    def __float__(self) -> float:
        return self.value

    def same_value(self, other: "SymbolicConstant") -> bool:
        return self.q == other.q and (self.q == 0 or self.pi_half_power == other.pi_half_power)

    def format_value(self) -> str:
        q = self.q
        if self.pi_half_power == 0 or q == 0:
            return format_fraction(q)
        if self.pi_half_power == 1:
            root = "sqrt(pi)"
        else:
            root = f"pi^({self.pi_half_power}/2)"
        num = "" if abs(q.numerator) == 1 else f"{abs(q.numerator)}*"
        sign = "-" if q < 0 else ""
        den = "" if q.denominator == 1 else f"/{q.denominator}"
        return f"{sign}{num}{root}{den}"

    def __str__(self) -> str:
        e = self.n_exponent
        exp = format_fraction(e)
        return f"{self.format_value()} * n^{{{exp}}}"


def gamma_half(twice_arg: int) -> tuple[Fraction, int]:
    """Gamma(twice_arg / 2) as (rational, power of sqrt(pi)); twice_arg >= 1."""
    if twice_arg < 1:
        raise ValueError("argument must be positive")
    if twice_arg % 2 == 0:
        return Fraction(math.factorial(twice_arg // 2 - 1)), 0
    j = twice_arg // 2
    return Fraction(math.factorial(2 * j), 4**j * math.factorial(j)), 1


def singularity_constant(a: Fraction, degree: int) -> SymbolicConstant:
    """E Z(T_n) ~ a * Gamma(1/2)/Gamma(degree/2) * n**((degree+1)/2) for leading a/d**degree."""
    if degree < 1:
        raise ValueError("degree in 1/d must be at least 1")
    g, g_pi = gamma_half(degree)
    return SymbolicConstant(Fraction(a) / g, 1 - g_pi, Fraction(degree + 1, 2))


def _check_132(p: Permutation) -> None:
    if not avoids(p, "132"):
        raise PatternError(f"pattern {p} contains 132")


def ed_expectation(sigma) -> LaurentPoly:
    """E_d X_sigma as an exact Laurent polynomial in d (negative powers only)."""
    p = parse_pattern(sigma) if not isinstance(sigma, Pattern) else sigma.perm
    if len(p) == 0:
        raise PatternError("empty pattern")
    _check_132(p)
    return _ed(p.word)


@lru_cache(maxsize=None)
def _ed(word: tuple[int, ...]) -> LaurentPoly:
    sig = pattern_stats(word)
    k = sig.k
    if k == 1:
        return D_INV
    acc = LaurentPoly()
    for q in sig.delta_set:
        acc = acc + CROSS * _ed(sig.prefix(q).word) * _ed(sig.suffix(q).word)
    m = sig.max_pos
    if m == 1:
        acc = acc + HALF_GAP * _ed(sig.suffix(1).word)
    elif m == k:
        acc = acc + HALF_GAP * _ed(sig.prefix(k - 1).word)
    else:
        acc = acc + CROSS * _ed(sig.prefix(m - 1).word) * _ed(sig.suffix(m).word)
    # positive powers from (1 - d)^2 must cancel, leaving no constant term
    assert acc.max_exp < 0, f"nonnegative powers survive for {sig}: {acc}"
    assert acc.degree_inv() == sig.lam - 1, f"degree mismatch for {sig}: {acc}"
    return acc


def size_bias(f: LaurentPoly) -> LaurentPoly:
    """E_d(N Z) from f = E_d Z, where N is the tree size."""
    gap = LaurentPoly({-1: 1, 1: -1})
    return gap * f.derivative() * Fraction(-1, 2) + D_INV * f


@lru_cache(maxsize=None)
def _leading(word: tuple[int, ...]) -> Fraction:
    sig = pattern_stats(word)
    if sig.k == 1:
        return Fraction(1)
    e = sum(
        (_leading(sig.prefix(q).word) * _leading(sig.suffix(q).word) for q in sig.delta_set),
        Fraction(0),
    ) / 4
    if sig.max_pos == sig.k:
        e += _leading(sig.prefix(sig.k - 1).word) / 2
    return e


def leading_coeff(sigma) -> Fraction:
    """Leading coefficient of E_d X_sigma, by its own short recursion."""
    p = parse_pattern(sigma) if not isinstance(sigma, Pattern) else sigma.perm
    _check_132(p)
    return _leading(p.word)


def asymptotic_constant(sigma) -> SymbolicConstant:
    """A_sigma with E n_sigma(pi_n) ~ A_sigma n^(lambda/2)."""
    sig = sigma if isinstance(sigma, Pattern) else pattern_stats(sigma)
    _check_132(sig.perm)
    return singularity_constant(leading_coeff(sig), sig.lam - 1)
