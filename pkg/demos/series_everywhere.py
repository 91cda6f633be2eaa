#!/usr/bin/env python3
"""One series, the whole plane: evaluate sum A_k P_k(s/2) at scattered points.

Unlike the Dirichlet series, this expansion converges for every complex s.
The price is speed: left of the imaginary axis the Pochhammer factors grow
polynomially in k, so more table is needed for the same tolerance.  The demo
prints terms_used so you can watch that cost appear.
"""

import mpmath
from mpmath import mpf

from maslanka import PrecisionContext, build_table
from maslanka.series import maslanka_eval, zeta_reference


def main():
    ctx = PrecisionContext(128)
    print("building kind=A table to k=700 (one-time cost)...")
    table = build_table("A", 700, ctx)

    points = [
        (mpf(4), "1e-20"),                       # terminates: P_k(2)=0 for k>=2
        (mpf(2), "1e-20"),
        (mpf(3), "1e-12"),
        (mpmath.mpc(5, 10), "1e-10"),
        (mpf("0.5"), "1e-8"),
        (mpmath.mpc("0.5", "14.134725"), "1e-4"),  # near the first zeta zero
        (mpf(0), "1e-8"),
        (mpf(-1), "1e-7"),
        (mpf("-2.5"), "1e-6"),
    ]

    print(f"\n{'s':>16}  {'tol':>6}  {'terms':>5}  {'series value':>26}  {'|vs reference|':>14}")
    for s, tol in points:
        r = maslanka_eval(s, table, mpf(tol), ctx)
        if r.is_pole:
            err = "(pole)"
        else:
            err = mpmath.nstr(abs(r.zeta_value - zeta_reference(s, ctx)), 3)
        tag = "" if r.converged else "  <- table exhausted"
        print(f"{mpmath.nstr(s, 8):>16}  {tol:>6}  {r.terms_used:>5}  "
              f"{mpmath.nstr(r.value, 18):>26}  {err:>14}{tag}")

    # s = 1 is the pole of zeta but not of (s-1)*zeta(s): the series just
    # converges to 1 there and the result object says so
    r = maslanka_eval(mpf(1), table, mpf("1e-8"), ctx)
    print(f"\nat s=1: value = {mpmath.nstr(r.value, 18)}, is_pole = {r.is_pole}, "
          f"zeta_value = {r.zeta_value}")

    # near the first nontrivial zero the factored form should nearly vanish
    s = mpmath.mpc("0.5", "14.134725")
    r = maslanka_eval(s, table, mpf("1e-4"), ctx)
    print(f"near the first zero: |zeta| by series = {mpmath.nstr(abs(r.zeta_value), 3)}")


if __name__ == "__main__":
    main()
