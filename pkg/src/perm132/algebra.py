"""Exact rational arithmetic: Laurent polynomials in d and truncated series in x.

Rationals are :class:`fractions.Fraction` throughout. The variable ``d`` of a
:class:`LaurentPoly` is the Galton-Watson parameter; substituting
d = sqrt(1 - 4x) turns an expectation polynomial into the generating function
of total occurrence counts.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Mapping

Number = int | Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def format_fraction(q: Fraction) -> str:
    q = _frac(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.comb(2 * n, n) // (n + 1)


class LaurentPoly:
    """Finite sum of c_e * d**e with rational c_e and integer (possibly negative) e."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Number] | None = None):
        c = {}
        for e, v in (coeffs or {}).items():
            v = _frac(v)
            if v:
                c[int(e)] = v
        self._c = dict(sorted(c.items()))

    @classmethod
    def monomial(cls, exp: int, coeff: Number = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def const(cls, c: Number) -> "LaurentPoly":
        return cls({0: c})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def __getitem__(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self):
        return hash(tuple(self._c.items()))

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return next(iter(self._c))

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return next(reversed(self._c))

    def degree_inv(self) -> int:
        """Degree as a polynomial in 1/d."""
        return -self.min_exp

    def leading(self) -> Fraction:
        """Coefficient of the most negative power of d."""
        return self._c[self.min_exp]

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: Number) -> "LaurentPoly":
        c = _frac(c)
        return LaurentPoly({e: c * v for e, v in self._c.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by d**k."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({e - 1: e * v for e, v in self._c.items() if e})

    def eval(self, d):
        """Evaluate at ``d`` (exact for Fraction/int input, float otherwise)."""
        if d == 0 and any(e < 0 for e in self._c):
            raise ZeroDivisionError("negative powers of d at d = 0")
        if isinstance(d, (int, Fraction)):
            d = _frac(d)
            return sum((v * d**e for e, v in self._c.items()), Fraction(0))
        return sum(float(v) * d**e for e, v in self._c.items())

    def format(self, var: str = "d", sep: str = "*") -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in self._c.items():
            mag = format_fraction(abs(v))
            if e == 0:
                term = mag
            else:
                power = var if e == 1 else f"{var}^{e}"
                term = power if mag == "1" else f"{mag}{sep}{power}"
            parts.append(("-" if v < 0 else "+", term))
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()!r})"

    def to_json(self) -> str:
        return json.dumps({str(e): format_fraction(v) for e, v in self._c.items()})

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls({int(e): Fraction(v) for e, v in json.loads(text).items()})


D_INV = LaurentPoly.monomial(-1)
ONE = LaurentPoly.const(1)


class TruncatedSeries:
    """Power series in x known exactly through x**order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Number], order: int):
        c = [_frac(v) for v in coeffs][: order + 1]
        c += [Fraction(0)] * (order + 1 - len(c))
        self.coeffs = c
        self.order = order

    def __getitem__(self, n: int) -> Fraction:
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def _common(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        k = self._common(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[: k + 1], other.coeffs)], k)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([a * other for a in self.coeffs], self.order)
        k = self._common(other)
        a, b = self.coeffs, other.coeffs
        out = [
            sum((a[i] * b[n - i] for i in range(n + 1)), Fraction(0))
            for n in range(k + 1)
        ]
        return TruncatedSeries(out, k)

    __rmul__ = __mul__

    def div_x(self, power: int = 1) -> "TruncatedSeries":
        """Exact division by x**power; the low coefficients must vanish."""
        if any(self.coeffs[:power]):
            raise ArithmeticError("series is not divisible by x^%d" % power)
        return TruncatedSeries(self.coeffs[power:], self.order - power)

    def __repr__(self) -> str:
        return f"TruncatedSeries({[format_fraction(c) for c in self.coeffs]}, order={self.order})"


def _one_minus_4x_power(a: Fraction, order: int) -> list[Fraction]:
    """Coefficients of (1 - 4x)**a through x**order (generalized binomial)."""
    out = [Fraction(1)]
    for n in range(1, order + 1):
        # c_n = c_{n-1} * (-4) * (a - n + 1) / n
        out.append(out[-1] * (-4) * (a - n + 1) / n)
    return out


def binomial_series(m: int, sign: int, order: int) -> TruncatedSeries:
    """(1 - 4x)**(sign * m / 2) through x**order, with sign in {+1, -1}."""
    if m < 0 or order < 0 or sign not in (1, -1):
        raise ValueError("need m >= 0, order >= 0 and sign = +1 or -1")
    return TruncatedSeries(_one_minus_4x_power(Fraction(sign * m, 2), order), order)


def catalan_prefactor(order: int) -> TruncatedSeries:
    """(1 - 2x - sqrt(1 - 4x)) / (2x) = sum_{n>=1} C_n x^n."""
    root = binomial_series(1, 1, order + 1)
    num = TruncatedSeries([1, -2], order + 1) - root
    return num.div_x(1) * Fraction(1, 2)


def _check_negative_only(f: LaurentPoly) -> None:
    if f and f.max_exp >= 0:
        raise ValueError(f"expected only negative powers of d, got {f}")


def gf_from_ed(f: LaurentPoly, order: int = 24) -> TruncatedSeries:
    """Series sum_n C_n z_n x^n for E_d Z = f(d), via d -> sqrt(1 - 4x)."""
    _check_negative_only(f)
    acc = TruncatedSeries([], order)
    for e, v in f.coeffs.items():
        acc = acc + binomial_series(-e, -1, order) * v
    return catalan_prefactor(order) * acc


def gf_coefficient(f: LaurentPoly, n: int) -> Fraction:
    """Coefficient of x**n in :func:`gf_from_ed` without building the series.

    Uses P(x)(1-4x)^a = [(1-2x)(1-4x)^a - (1-4x)^(a+1/2)] / (2x), so only
    three binomial coefficients are needed per term. Suitable for n in the
    thousands.
    """
    _check_negative_only(f)
    if n < 1:
        return Fraction(0)
    total = Fraction(0)
    for e, v in f.coeffs.items():
        a = Fraction(e, 2)
        b = _binom_coeff(a, n + 1) - 2 * _binom_coeff(a, n) - _binom_coeff(a + Fraction(1, 2), n + 1)
        total += v * b / 2
    return total


def _binom_coeff(a: Fraction, n: int) -> Fraction:
    """[x^n] (1 - 4x)**a."""
    num, den = 1, 1
    for i in range(n):
        num *= (a - i).numerator * -4
        den *= (a - i).denominator * (i + 1)
    return Fraction(num, den)


def exact_mean_from_ed(f: LaurentPoly, n: int) -> Fraction:
    """E Z(T_n) from E_d Z."""
    return gf_coefficient(f, n) / catalan(n)
