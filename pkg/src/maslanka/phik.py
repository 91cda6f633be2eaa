"""The rational functions phi_k and their Euler-Maclaurin remainder machinery.

    phi_k(x) = (1 - 1/x^2)^k / x,          x >= 1,

whose significance is the identity  A_k = -sum_{n>=1} phi_k'(n):  the defining
alternating sum for A_k is, term by term, the value of -phi_k' at the positive
integers.  Euler-Maclaurin summation at depth a then turns A_k into a single
remainder integral, because every boundary term vanishes (phi_k^(a)(1) = 0 for
a <= k, and everything decays at infinity):

    A_k = ((-1)^a / a!) * Int_1^inf  Bbar_a(x) * phi_k^(a+1)(x) dx .

Derivatives of phi_k stay closed-form thanks to a double sequence of
integer-coefficient polynomials p_{a,j}(k):

    phi_k^(a)(x) = (1 - 1/x^2)^(k-a) * sum_{j=0}^{a} p_{a,j}(k) / x^(a+2j+1)

    p_{0,0} = 1,   p_{a,j} = -(2j+a) p_{a-1,j} + (2k+2j-a) p_{a-1,j-1}.

The quadrature strategy throughout: the integrands are piecewise smooth with
breakpoints exactly at the integers (corners of Bbar_a) or at the real roots
of the bracketed polynomial (kinks of |phi^(a)|), so panels aligned on those
breakpoints restore spectral accuracy for a fixed-order Gauss-Legendre rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .bernoulli import periodified_bernoulli, periodified_sup_bound
from .mpnum import PrecisionContext, Real

__all__ = [
    "PajTable",
    "QuadratureError",
    "binomial_sum_equals_neg_phi_prime",
    "build_paj",
    "deriv_l1_norm",
    "em_remainder_a_k",
    "paj_eval",
    "phi",
    "phi_deriv",
]

QUAD_ORDER = 16


class QuadratureError(ArithmeticError):
    """A quadrature loop could not meet its tolerance within its budget."""


@dataclass(frozen=True)
class PajTable:
    """p_{a,j}(k) for 0 <= j <= a <= a_max, as exact integer polynomials in k.

    entries[(a, j)] holds the coefficients lowest power first, so
    p_{1,1} = 2k+1 is stored as (1, 2).
    """

    a_max: int
    entries: dict[tuple[int, int], tuple[int, ...]]


def build_paj(a_max: int) -> PajTable:
    """All p_{a,j} up to depth a_max by the recurrence, exact integer arithmetic."""
    if a_max < 0:
        raise ValueError("a_max must be >= 0")
    entries: dict[tuple[int, int], tuple[int, ...]] = {(0, 0): (1,)}
    for a in range(1, a_max + 1):
        for j in range(a + 1):
            out = [0] * (j + 1)
            prev_same = entries.get((a - 1, j))
            if prev_same is not None:
                for i, c in enumerate(prev_same):
                    out[i] -= (2 * j + a) * c
            prev_down = entries.get((a - 1, j - 1))
            if prev_down is not None:
                # (2k + (2j - a)) * p_{a-1,j-1}
                for i, c in enumerate(prev_down):
                    out[i] += (2 * j - a) * c
                    out[i + 1] += 2 * c
            entries[(a, j)] = tuple(out)
    return PajTable(a_max=a_max, entries=entries)


def paj_eval(paj: PajTable, a: int, j: int, k: int) -> int:
    """p_{a,j}(k) as an exact integer."""
    if not (0 <= j <= a <= paj.a_max):
        raise ValueError("need 0 <= j <= a <= paj.a_max")
    acc = 0
    for c in reversed(paj.entries[(a, j)]):
        acc = acc * k + c
    return acc


def phi(k: int, x, ctx: PrecisionContext) -> Real:
    """phi_k(x) = (1 - 1/x^2)^k / x; exactly 0 at x = 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    with ctx.prec():
        xf = mpf(x)
        if xf < 1:
            raise ValueError("x must be >= 1")
        u = 1 - 1 / (xf * xf)
        return +(u ** k / xf)


def _phi_deriv_raw(k: int, a: int, x, pcoeffs: list[int]):
    """phi_k^(a)(x) at ambient precision given pcoeffs[j] = p_{a,j}(k)."""
    xf = mpf(x)
    inv2 = 1 / (xf * xf)
    u = 1 - inv2
    xp = xf ** (-(a + 1))
    acc = mp.zero
    for c in pcoeffs:
        acc += c * xp
        xp *= inv2
    return u ** (k - a) * acc


def _pcoeffs(paj: PajTable, a: int, k: int) -> list[int]:
    return [paj_eval(paj, a, j, k) for j in range(a + 1)]


def phi_deriv(k: int, a: int, x, paj: PajTable, ctx: PrecisionContext) -> Real:
    """The a-th derivative of phi_k from the closed form; a = 0 reduces to phi."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not (0 <= a <= min(k, paj.a_max)):
        raise ValueError("need 0 <= a <= min(k, paj.a_max)")
    with ctx.prec():
        xf = mpf(x)
        if xf < 1:
            raise ValueError("x must be >= 1")
        return +_phi_deriv_raw(k, a, xf, _pcoeffs(paj, a, k))


_PAJ1: PajTable | None = None


def binomial_sum_equals_neg_phi_prime(k: int, x, ctx: PrecisionContext):
    """Both sides of  sum_{j=0}^{k} (-1)^j C(k,j) (2j+1) / x^(2j+2) = -phi_k'(x).

    Returned as a (lhs, rhs) pair for tests; the alternating LHS is evaluated
    at escalated precision, the RHS from the closed-form derivative.
    """
    global _PAJ1
    if k < 1:
        raise ValueError("k must be >= 1")
    if _PAJ1 is None:
        _PAJ1 = build_paj(1)
    ectx = ctx.escalated(k)
    with ectx.prec():
        xf = mpf(x)
        if xf <= 1:
            raise ValueError("x must be > 1")
        inv2 = 1 / (xf * xf)
        ppow = inv2
        lhs = mp.zero
        c = 1
        for j in range(k + 1):
            term = mpf(c * (2 * j + 1)) * ppow
            lhs = lhs + term if j % 2 == 0 else lhs - term
            c = c * (k - j) // (j + 1)
            ppow = ppow * inv2
        rhs = -_phi_deriv_raw(k, 1, xf, _pcoeffs(_PAJ1, 1, k))
        return +lhs, +rhs


# -- Gauss-Legendre panels ---------------------------------------------------

_GL_CACHE: dict[tuple[int, int], tuple[tuple, tuple]] = {}


def _gauss_legendre(n: int, prec: int) -> tuple[tuple, tuple]:
    """Nodes and weights of the order-n Gauss-Legendre rule on [-1, 1].

    Newton iteration on the three-term Legendre recurrence, computed at
    prec + 32 bits; mpmath offers tanh-sinh natively but no fixed-order
    arbitrary-precision Legendre nodes, hence this small solver.
    """
    key = (n, prec)
    cached = _GL_CACHE.get(key)
    if cached is not None:
        return cached
    with mp.workprec(prec + 32):
        nodes: list = []
        weights: list = []
        tol = mpf(2) ** (-(prec + 16))
        for i in range(1, n // 2 + 1):
            x = mpmath.cos(mp.pi * (i - mpf(1) / 4) / (n + mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mp.one, x
                for m in range(2, n + 1):
                    p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < tol:
                    break
            p0, p1 = mp.one, x
            for m in range(2, n + 1):
                p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
            dp = n * (x * p1 - p0) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            nodes.append(x)
            weights.append(w)
        xs: list = []
        ws: list = []
        for x, w in zip(reversed(nodes), reversed(weights)):
            xs.append(-x)
            ws.append(w)
        if n % 2:
            x = mp.zero
            p0, p1 = mp.one, x
            for m in range(2, n + 1):
                p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
            dp = n * (x * p1 - p0) / (x * x - 1)
            xs.append(x)
            ws.append(2 / (dp * dp))
        for x, w in zip(nodes, weights):
            xs.append(x)
            ws.append(w)
        result = (tuple(+x for x in xs), tuple(+w for w in ws))
    _GL_CACHE[key] = result
    return result


def _panel_integral(f, lo, hi, xs, ws):
    half = (hi - lo) / 2
    mid = (hi + lo) / 2
    acc = mp.zero
    for x, w in zip(xs, ws):
        acc += w * f(mid + half * x)
    return acc * half


def em_remainder_a_k(
    k: int,
    a: int,
    paj: PajTable,
    ctx: PrecisionContext,
    quad_tol: Real,
    max_panels: int = 200_000,
) -> Real:
    """A_k recomputed as the depth-a Euler-Maclaurin remainder integral.

        ((-1)^a / a!) * Int_1^inf Bbar_a(x) * phi_k^(a+1)(x) dx

    Valid for 2 <= a < k (so every boundary derivative vanishes and the result
    is depth-independent).  Unit panels [n, n+1] with the fixed Gauss-Legendre
    rule; integration stops once the analytic tail bound

        sup|Bbar_a| / a! * sum_j |p_{a+1,j}(k)| / ((a+2j+1) X^(a+2j+1))

    drops below quad_tol, and fails if that takes more than max_panels panels.
    """
    if not 2 <= a < k:
        raise ValueError("need 2 <= a < k")
    if paj.a_max < a + 1:
        raise ValueError("paj must cover depth a+1")
    wp = ctx.working_bits
    with mp.workprec(wp):
        tol = mpf(quad_tol)
        if not tol > 0:
            raise ValueError("quad_tol must be positive")
        sup_b = periodified_sup_bound(a)
        afact = mpf(math.factorial(a))
        pc = _pcoeffs(paj, a + 1, k)
        abs_pc = [abs(c) for c in pc]
        xs, ws = _gauss_legendre(QUAD_ORDER, wp)

        def integrand(x):
            return periodified_bernoulli(a, x) * _phi_deriv_raw(k, a + 1, x, pc)

        def tail_bound(X):
            acc = mp.zero
            xp = mpf(X) ** (-(a + 1))
            inv2 = 1 / (mpf(X) * mpf(X))
            for j, c in enumerate(abs_pc):
                acc += c * xp / (a + 2 * j + 1)
                xp *= inv2
            return sup_b * acc / afact

        total = mp.zero
        n = 1
        while True:
            total += _panel_integral(integrand, mpf(n), mpf(n + 1), xs, ws)
            n += 1
            if n >= 4 and tail_bound(n) < tol:
                break
            if n > max_panels:
                raise QuadratureError(
                    f"tolerance {mpmath.nstr(tol, 6)} not met within {max_panels} panels"
                )
        value = total / afact
        if a % 2:
            value = -value
        return +value


# -- L1 norms of phi^(a) -----------------------------------------------------


def _bracket_poly_roots(coeffs: list[int], bisect_bits: int = 48) -> list[Fraction]:
    """Real roots in (0, 1) of g(u) = sum_j coeffs[j] u^j, as Fractions.

    Sign evaluation is exact (integers only): sign(g(p/q)) = sign(sum_j c_j
    p^j q^(deg-j)).  A uniform grid brackets sign changes, bisection narrows
    each to width 2^-bisect_bits.  Exactness means no spurious roots from
    rounding; a root of even multiplicity (no sign change) would be missed,
    but such a point does not break |integrand| smoothness anyway.
    """

    def sign_at(fr: Fraction) -> int:
        p, q = fr.numerator, fr.denominator
        acc = 0
        qp = 1
        for c in reversed(coeffs):  # Horner for q^deg * g(p/q), all-integer
            acc = acc * p + c * qp
            qp *= q
        return (acc > 0) - (acc < 0)

    grid = 2048
    roots: list[Fraction] = []
    prev_u = Fraction(1, grid)
    prev_s = sign_at(prev_u)
    if prev_s == 0:
        roots.append(prev_u)
    for i in range(2, grid):
        u = Fraction(i, grid)
        s = sign_at(u)
        if s == 0:
            roots.append(u)
        elif s != prev_s and prev_s != 0:
            lo, hi = prev_u, u
            for _ in range(bisect_bits + 12):
                mid = (lo + hi) / 2
                sm = sign_at(mid)
                if sm == 0:
                    lo = hi = mid
                    break
                if sm == prev_s:
                    lo = mid
                else:
                    hi = mid
                if hi - lo < Fraction(1, 2 ** bisect_bits):
                    break
            roots.append((lo + hi) / 2)
        prev_u, prev_s = u, s
    return roots


def deriv_l1_norm(
    k: int,
    a: int,
    paj: PajTable,
    ctx: PrecisionContext,
    rel_tol: float = 1e-10,
) -> Real:
    """Int_1^inf |phi_k^(a)(x)| dx by sign-split panel quadrature plus tail bound.

    |phi^(a)| is smooth except where the bracketed polynomial g(u) =
    sum_j p_{a,j}(k) u^j vanishes (u = 1/x^2), so those roots become panel
    breakpoints.  Beyond X0 ~ 4 sqrt(k) the integral is extended by doubling
    panels until the term-wise tail bound

        sum_j |p_{a,j}(k)| / ((a+2j) X^(a+2j))

    is below rel_tol of the accumulated value; the bound itself is then added,
    so the quoted value covers the whole half-line.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 1 <= a <= min(k, paj.a_max):
        raise ValueError("need 1 <= a <= min(k, paj.a_max)")
    pc = _pcoeffs(paj, a, k)
    abs_pc = [abs(c) for c in pc]
    roots = _bracket_poly_roots(pc)
    wp = ctx.working_bits
    with mp.workprec(wp):
        xs, ws = _gauss_legendre(QUAD_ORDER, wp)
        breakpoints = sorted(1 / mpmath.sqrt(mpf(r.numerator) / r.denominator) for r in roots)
        X0 = mpf(max(math.ceil(4 * math.sqrt(k)), 4))
        if breakpoints:
            X0 = max(X0, mpmath.ceil(breakpoints[-1]) + 2)

        def f(x):
            return abs(_phi_deriv_raw(k, a, x, pc))

        def tail_bound(X):
            acc = mp.zero
            xp = mpf(X) ** (-a)
            inv2 = 1 / (mpf(X) * mpf(X))
            for j, c in enumerate(abs_pc):
                acc += c * xp / (a + 2 * j)
                xp *= inv2
            return acc

        # panel edges: 1 -> each breakpoint -> X0, long stretches cut to <= 1
        edges = [mp.one]
        for b in breakpoints + [X0]:
            lo = edges[-1]
            if b <= lo:
                continue
            span = b - lo
            steps = max(1, int(mpmath.ceil(span)))
            for i in range(1, steps):
                edges.append(lo + span * i / steps)
            edges.append(b)

        acc = mp.zero
        for lo, hi in zip(edges, edges[1:]):
            acc += _panel_integral(f, lo, hi, xs, ws)

        X = edges[-1]
        for _ in range(400):
            if tail_bound(X) <= mpf(rel_tol) * acc:
                break
            acc += _panel_integral(f, X, 2 * X, xs, ws)
            X = 2 * X
        else:
            raise QuadratureError("tail bound did not shrink within the doubling budget")
        return +(acc + tail_bound(X))
