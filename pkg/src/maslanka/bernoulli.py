"""Exact Bernoulli machinery: numbers, even-argument zeta, periodified polynomials.

This module is the "oracle layer" of the package: everything here is exact
rational arithmetic until a final rounding, so the coefficient sums built on
top of it have a single error source (the alternating-sum rounding, handled by
precision escalation in :mod:`maslanka.mpnum`).

Conventions: B_1 = -1/2 (the defining recurrence's value), and for even m >= 2

    zeta(m) = (-1)**(m/2+1) * B_m * (2 pi)**m / (2 m!)  =  q(m) * pi**m

with q(m) = |B_m| * 2**(m-1) / m! an exact positive rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .mpnum import PrecisionContext, Real

__all__ = [
    "BernoulliTable",
    "bernoulli_number",
    "bernoulli_poly_coeffs",
    "bernoulli_table",
    "periodified_bernoulli",
    "periodified_sup_bound",
    "zeta_even",
    "zeta_rational_part",
]


@dataclass(frozen=True)
class BernoulliTable:
    """Exact B_0 .. B_n_max."""

    values: tuple[Fraction, ...]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def bernoulli_table(n_max: int) -> BernoulliTable:
    """Exact Bernoulli numbers via the defining recurrence.

    For n >= 1:  sum_{j=0}^{n} C(n+1, j) B_j = 0,  so
    B_n = -(1/(n+1)) * sum_{j<n} C(n+1, j) B_j.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    vals: list[Fraction] = [Fraction(1)]
    for n in range(1, n_max + 1):
        acc = sum(math.comb(n + 1, j) * vals[j] for j in range(n))
        vals.append(Fraction(-acc, n + 1))
    return BernoulliTable(tuple(vals))


def bernoulli_number(n: int) -> Fraction:
    """Exact B_n, efficient for large n.

    Delegates to mpmath.bernfrac (denominator by von Staudt-Clausen, numerator
    via a zeta evaluation at guaranteed precision), which stays fast well past
    n = 2000; the recurrence table above cross-checks it for small n.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    p, q = mpmath.bernfrac(n)
    return Fraction(int(p), int(q))


_Q_CACHE: dict[int, Fraction] = {}


def zeta_rational_part(m: int) -> Fraction:
    """The exact rational q(m) with zeta(m) = q(m) * pi**m, for even m >= 2."""
    if m < 2 or m % 2:
        raise ValueError("m must be an even integer >= 2")
    q = _Q_CACHE.get(m)
    if q is None:
        b = bernoulli_number(m)
        q = Fraction(abs(b.numerator) * 2 ** (m - 1), b.denominator * math.factorial(m))
        _Q_CACHE[m] = q
    return q


def zeta_even(m: int, ctx: PrecisionContext) -> Real:
    """zeta(m) for even m >= 2, from the exact Bernoulli formula."""
    q = zeta_rational_part(m)
    with ctx.prec():
        return +(mpf(q.numerator) * mp.pi ** m / mpf(q.denominator))


_POLY_CACHE: dict[int, tuple[Fraction, ...]] = {}


def bernoulli_poly_coeffs(a: int) -> tuple[Fraction, ...]:
    """Exact coefficients of the Bernoulli polynomial B_a(x), highest power first.

    B_a(x) = sum_{i=0}^{a} C(a, i) B_i x**(a-i).
    """
    if a < 0:
        raise ValueError("a must be >= 0")
    coeffs = _POLY_CACHE.get(a)
    if coeffs is None:
        tab = bernoulli_table(a)
        coeffs = tuple(math.comb(a, i) * tab[i] for i in range(a + 1))
        _POLY_CACHE[a] = coeffs
    return coeffs


def periodified_bernoulli(a: int, x) -> Real:
    """B_a({x}), the periodified Bernoulli polynomial, at the ambient precision.

    Horner evaluation on the exact rational coefficients; rounding happens only
    in the conversion of each coefficient and the accumulation itself.  Callers
    that care about precision wrap the call in mp.workprec.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    xf = mpf(x)
    if xf < 0:
        raise ValueError("x must be >= 0")
    t = xf - mpmath.floor(xf)
    acc = mp.zero
    for c in bernoulli_poly_coeffs(a):
        acc = acc * t + mpf(c.numerator) / mpf(c.denominator)
    return acc


def periodified_sup_bound(a: int) -> Real:
    """Upper bound for sup_x |B_a({x})|, at the ambient precision.

    a = 1: exactly 1/2.  Even a: the sup is |B_a| (attained at integers).
    Odd a >= 3: the Fourier bound 2 * zeta(a) * a! / (2 pi)**a.  A tiny
    relative pad keeps the result an upper bound despite rounding.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    pad = 1 + mpf(2) ** (-20)
    if a == 1:
        return mpf(1) / 2
    if a % 2 == 0:
        b = bernoulli_number(a)
        return abs(mpf(b.numerator)) / mpf(b.denominator) * pad
    return 2 * mpmath.zeta(a) * mpf(math.factorial(a)) / (2 * mp.pi) ** a * pad
