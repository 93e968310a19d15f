"""Cross-engine consistency checks, shared by ``verify`` and the test suite.

Every check compares two independent routes to the same exact quantity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .algebra import catalan, gf_coefficient, gf_from_ed
from .enumeration import count_vectors, enumerate_trees, exact_means, exact_mixed_moment
from .expectation import asymptotic_constant, ed_expectation, leading_coeff
from .moments import FAMILIES, Monomial, asymptotic_mixed, exact_moment, tmom3_limit
from .perms import avoiders, occurrences_naive, parse_pattern
from .trees import count_occurrences_tree, count_program, height_profile, tree_to_perm


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def check_gf_vs_enumeration(kmax: int = 4, nmax: int = 7) -> Check:
    bad = []
    pats = [p for k in range(1, kmax + 1) for p in avoiders(k)]
    for n in range(nmax + 1):
        means = exact_means(pats, n) if n else {p: Fraction(0) for p in pats}
        for p in pats:
            series = gf_from_ed(ed_expectation(p), nmax + 1)
            via_gf = series[n] / catalan(n)
            if via_gf != means[p] or gf_coefficient(ed_expectation(p), n) != series[n]:
                bad.append(f"{p}@{n}")
    return Check("generating function vs enumeration", not bad, ", ".join(bad[:5]))


def check_leading_coefficients(kmax: int = 6) -> Check:
    bad = [str(p) for k in range(1, kmax + 1) for p in avoiders(k) if leading_coeff(p) != ed_expectation(p).leading()]
    return Check("leading coefficient recursion vs full polynomial", not bad, ", ".join(bad[:5]))


def check_tree_counts(nmax: int = 6, kmax: int = 3) -> Check:
    pats = [p for k in range(1, kmax + 1) for p in avoiders(k)]
    prog = count_program(pats)
    bad = 0
    for n in range(1, nmax + 1):
        for t, vec in zip(enumerate_trees(n), count_vectors(n, prog)):
            pi = tree_to_perm(t)
            direct = count_occurrences_tree(t, (), prog)
            for p in pats:
                v = occurrences_naive(p, pi)
                if direct[p] != v or vec[prog.index[p]] != v:
                    bad += 1
    return Check("tree recursion vs naive occurrence count", bad == 0, f"{bad} mismatches" if bad else "")


def check_left_heights(nmax: int = 7) -> Check:
    prog = count_program(["12"])
    col = prog.index[parse_pattern("12")]
    bad = 0
    for n in range(1, nmax + 1):
        for t, vec in zip(enumerate_trees(n), count_vectors(n, prog)):
            if sum(height_profile(t).h_left) != vec[col]:
                bad += 1
    return Check("sum of left heights equals X_12", bad == 0, f"{bad} trees" if bad else "")


def check_mixed_moments(nmax: int = 7) -> Check:
    monos = ["12^2", "12*213", "213*231", "231*312", "123^2", "21*12", "213^3"]
    bad = []
    for text in monos:
        mono = Monomial.parse(text)
        for n in range(1, nmax + 1):
            if exact_moment(mono, n) != exact_mixed_moment(mono, n):
                bad.append(f"{text}@{n}")
    return Check("mixed-moment polynomial vs enumeration", not bad, ", ".join(bad[:5]))


def check_tmom3(max_weight: int = 12) -> Check:
    bad = []
    for fam, (sigma, w0) in FAMILIES.items():
        for k in range(max_weight // w0 + 1):
            for l in range((max_weight - w0 * k) // 3 + 1):
                if k + l == 0:
                    continue
                mono = Monomial.of({sigma: k, "12": l})
                if not tmom3_limit(fam, k, l).same_value(asymptotic_mixed(mono)):
                    bad.append(f"{fam}({k},{l})")
    return Check("scalar moment recursions vs monomial expansion", not bad, ", ".join(bad[:5]))


def check_equal_means(nmax: int = 9) -> Check:
    bad = [n for n in range(1, nmax + 1) if len(set(exact_means(["213", "231", "312"], n).values())) != 1]
    return Check("means of 213, 231, 312 coincide", not bad, str(bad) if bad else "")


def check_first_moment_constants() -> Check:
    bad = []
    for k in range(1, 6):
        for p in avoiders(k):
            if not asymptotic_constant(p).same_value(asymptotic_mixed({p: 1})):
                bad.append(str(p))
    return Check("mean constants: single recursion vs moment engine", not bad, ", ".join(bad[:5]))


SUITE: tuple[Callable[[], Check], ...] = (
    check_leading_coefficients,
    check_first_moment_constants,
    check_gf_vs_enumeration,
    check_tree_counts,
    check_left_heights,
    check_mixed_moments,
    check_tmom3,
    check_equal_means,
)


def verify_all() -> Iterator[Check]:
    for fn in SUITE:
        try:
            yield fn()
        except AssertionError as exc:
            yield Check(fn.__name__, False, f"assertion: {exc}")


def exact_mean_direct(sigma, n: int) -> Fraction:
    """Mean of n_sigma over all 132-avoiders of length n, by naive counting."""
    perms = avoiders(n)
    return Fraction(sum(occurrences_naive(sigma, p) for p in perms), len(perms))

