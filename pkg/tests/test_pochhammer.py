import random

import mpmath
import pytest
from mpmath import mp, mpc, mpf

from maslanka.mpnum import PoleError, PrecisionContext
from maslanka.pochhammer import (
    PochhammerEval,
    pochhammer_bound_probe,
    pochhammer_gamma,
    pochhammer_product,
    pochhammer_values,
)


class TestProduct:
    def test_empty_product(self, ctx128):
        assert pochhammer_product(0, mpf("0.3"), ctx128) == 1

    def test_k3_at_half(self, ctx128):
        # (1/2)(3/4)(5/6) = 5/16
        with mp.workprec(160):
            diff = abs(pochhammer_product(3, mpf("0.5"), ctx128) - mpf("0.3125"))
        assert diff < mpf(2) ** -150

    def test_k2_at_three(self, ctx128):
        # (1-3)(1-3/2) = 1, both factors exact dyadics
        assert pochhammer_product(2, mpf(3), ctx128) == 1

    def test_linear_factor(self, ctx128):
        with mp.workprec(160):
            diff = abs(pochhammer_product(1, mpf("0.25"), ctx128) - mpf("0.75"))
        assert diff == 0

    def test_at_minus_one(self, ctx128):
        # prod (1 + 1/r) telescopes to k+1
        for k in (1, 5, 17, 60):
            with mp.workprec(160):
                rel = abs(pochhammer_product(k, mpf(-1), ctx128) - (k + 1)) / (k + 1)
            assert rel < mpf(2) ** -150

    def test_complex_exact_dyadic(self, ctx128):
        # (1-i)(1-i/2) = 1/2 - 3i/2, every intermediate exact
        assert pochhammer_product(2, mpc(0, 1), ctx128) == mpc("0.5", "-1.5")

    @pytest.mark.parametrize("k", [-1, -5])
    def test_rejects_negative_k(self, k, ctx128):
        with pytest.raises(ValueError):
            pochhammer_product(k, mpf(1), ctx128)

    def test_truncation_zeros_exact(self, ctx64):
        # P_k(m) = 0 exactly for every integer 1 <= m <= k
        for k in range(1, 65):
            for m in range(1, k + 1):
                assert pochhammer_product(k, mpf(m), ctx64) == 0

    def test_no_spurious_zero_past_truncation(self, ctx64):
        assert pochhammer_product(3, mpf(5), ctx64) != 0


class TestValues:
    def test_matches_product_bitwise(self, ctx128):
        s = mpf("0.5") + mpc(0, 1) * mpf("3.25")
        vals = pochhammer_values(s, 50, ctx128)
        assert len(vals) == 51
        for k in (0, 1, 7, 50):
            assert vals[k] == pochhammer_product(k, s, ctx128)

    def test_zero_argument_all_ones(self, ctx64):
        assert all(v == 1 for v in pochhammer_values(mpf(0), 30, ctx64))


class TestGammaForm:
    def test_at_minus_one(self, ctx128):
        for k in (1, 4, 40):
            with mp.workprec(160):
                rel = abs(pochhammer_gamma(k, mpf(-1), ctx128) - (k + 1)) / (k + 1)
            assert rel < mpf(2) ** -120

    @pytest.mark.parametrize("s", [1, 2, 3])
    def test_pole_at_positive_integers(self, s, ctx128):
        # Gamma(1-s) pole; the product form is the one to use there
        with pytest.raises(PoleError):
            pochhammer_gamma(5, mpf(s), ctx128)

    def test_rejects_k_zero(self, ctx128):
        with pytest.raises(ValueError):
            pochhammer_gamma(0, mpf("0.5"), ctx128)

    def test_cross_form_agreement_seeded(self, ctx128):
        """Product and Gamma-ratio forms agree on 200 random points.

        Points with a coordinate near an integer on the real axis are skipped:
        the Gamma form is singular at the exact integers and the two forms are
        compared only where both are well defined.
        """
        rng = random.Random(20240117)
        checked = 0
        while checked < 200:
            k = rng.randint(1, 200)
            re = rng.uniform(-10, 10)
            im = rng.uniform(-10, 10) if rng.random() < 0.5 else 0.0
            if im == 0.0 and abs(re - round(re)) < 0.05:
                continue
            with mp.workprec(200):
                s = mpf(re) + mpc(0, 1) * mpf(im) if im else mpf(re)
                a = pochhammer_product(k, s, ctx128)
                b = pochhammer_gamma(k, s, ctx128)
                rel = abs(a - b) / abs(a)
            assert rel < mpf(2) ** -115, (k, re, im)
            checked += 1


class TestBoundProbe:
    def test_zero_is_unit(self, ctx64):
        assert pochhammer_bound_probe(mpf(0), 100, ctx64) == 1

    def test_two_truncates(self, ctx64):
        # only P_1(2) = -1 survives; the rest vanish
        assert pochhammer_bound_probe(mpf(2), 50, ctx64) == 1

    def test_half_stabilizes_toward_inverse_root_pi(self, ctx64):
        p500 = pochhammer_bound_probe(mpf("0.5"), 500, ctx64)
        p1000 = pochhammer_bound_probe(mpf("0.5"), 1000, ctx64)
        with mp.workprec(96):
            limit = 1 / mpmath.sqrt(mpmath.pi)
            assert p500 < p1000 < limit
            assert abs(p1000 - limit) / limit < mpf("0.01")

    def test_negative_real_sup_at_k_one(self, ctx64):
        # for sigma < 0 the weighted values decrease from k = 1, where
        # |P_1(-5/2)| * 1**sigma = 7/2 exactly
        assert pochhammer_bound_probe(mpf("-2.5"), 1000, ctx64) == mpf("3.5")

    def test_negative_real_pointwise_gamma_asymptote(self, ctx64):
        # |P_k(s)| k**Re(s) -> 1/|Gamma(1-s)| pointwise
        with mp.workprec(96):
            v = abs(pochhammer_product(1000, mpf("-2.5"), ctx64)) * mpf(1000) ** mpf("-2.5")
            limit = 1 / mpmath.gamma(mpf("3.5"))
            assert abs(v - limit) / limit < mpf("0.005")

    def test_rejects_bad_kmax(self, ctx64):
        with pytest.raises(ValueError):
            pochhammer_bound_probe(mpf(1), 0, ctx64)


def test_eval_record_is_frozen():
    rec = PochhammerEval(k=2, s=mpf(3), value=mpf(1))
    with pytest.raises(Exception):
        rec.k = 5
