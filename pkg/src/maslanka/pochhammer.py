"""Pochhammer polynomials P_k(s) = prod_{r=1}^{k} (1 - s/r), with P_0 = 1.

Two evaluators: the defining product (default; exact at the integer truncation
points P_k(m) = 0 for integer 1 <= m <= k) and a Gamma-ratio form
P_k(s) = Gamma(k+1-s) / (k! Gamma(1-s)) used as a cross-check and for
asymptotics.  A bound probe measures sup_k |P_k(s)| k^Re(s).
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .mpnum import Complex, PrecisionContext, Real, ln_gamma

__all__ = [
    "PochhammerEval",
    "pochhammer_bound_probe",
    "pochhammer_gamma",
    "pochhammer_product",
    "pochhammer_values",
]


@dataclass(frozen=True)
class PochhammerEval:
    k: int
    s: Complex
    value: Complex


def pochhammer_product(k: int, s, ctx: PrecisionContext):
    """P_k(s) by the defining product.

    Returns mpf for real s, mpc for complex s.  When s is a real integer with
    1 <= s <= k the factor (1 - s/s) is exactly zero and so is the result.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    with ctx.prec():
        z = mpmath.mpmathify(s)
        acc = mp.one
        for r in range(1, k + 1):
            acc = acc * (1 - z / r)
        return +acc


def pochhammer_values(s, k_max: int, ctx: PrecisionContext) -> list:
    """[P_0(s), ..., P_k_max(s)] filled incrementally, O(1) per additional k."""
    with ctx.prec():
        z = mpmath.mpmathify(s)
        out = [mp.one]
        acc = mp.one
        for r in range(1, k_max + 1):
            acc = acc * (1 - z / r)
            out.append(acc)
        return out


def pochhammer_gamma(k: int, s, ctx: PrecisionContext):
    """P_k(s) via exp(ln_gamma(k+1-s) - ln_gamma(k+1) - ln_gamma(1-s)).

    Raises PoleError when 1-s or k+1-s is a non-positive integer; at those s
    callers use pochhammer_product, which needs no pole bookkeeping.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    with ctx.prec():
        z = mpmath.mpmathify(s)
        d = ln_gamma(k + 1 - z, ctx) - ln_gamma(mpf(k + 1), ctx) - ln_gamma(1 - z, ctx)
        return +mpmath.exp(d)


def pochhammer_bound_probe(s, k_max: int, ctx: PrecisionContext) -> Real:
    """sup over 1 <= k <= k_max of |P_k(s)| * k**Re(s), by incremental sweep."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    with ctx.prec():
        z = mpmath.mpmathify(s)
        sigma = mp.re(z)
        acc = mp.one
        best = mp.zero
        for k in range(1, k_max + 1):
            acc = acc * (1 - z / k)
            val = abs(acc) * mpf(k) ** sigma
            if val > best:
                best = val
        return +best
