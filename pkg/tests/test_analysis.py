import math

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf

from maslanka.analysis import DecayFit, decay_fit, rh_diagnostic
from maslanka.coefficients import CoefficientTable


def _power_law_table(k_max: int = 100, p: int = 3) -> CoefficientTable:
    """Synthetic kind=A table with c_k = k^-p exactly (c_0 := 1)."""
    with mp.workprec(64):
        values = tuple(mpf(1) if k == 0 else +(mpf(k) ** -p) for k in range(k_max + 1))
    return CoefficientTable(
        kind="A",
        k_max=k_max,
        target_bits=64,
        values=values,
        error_bound_exponents=(-300,) * (k_max + 1),
    )


@pytest.fixture(scope="module")
def cubic_table():
    return _power_law_table()


class TestDecayFitSynthetic:
    def test_exact_power_law(self, cubic_table):
        fit = decay_fit(cubic_table, 2, 100)
        assert isinstance(fit, DecayFit)
        assert fit.k_range == (2, 100)
        assert abs(fit.slope + 3) < 1e-10
        assert abs(fit.intercept) < 1e-10
        assert fit.max_abs_residual < 1e-10
        assert fit.excluded_count == 0

    @settings(max_examples=40, deadline=None)
    @given(st.floats(min_value=1e-3, max_value=1e3, allow_nan=False))
    def test_scale_equivariance(self, cubic_table, scale):
        with mp.workprec(64):
            scaled_values = tuple(+(v * mpf(scale)) for v in cubic_table.values)
        scaled = CoefficientTable(
            kind="A",
            k_max=cubic_table.k_max,
            target_bits=64,
            values=scaled_values,
            error_bound_exponents=cubic_table.error_bound_exponents,
        )
        base = decay_fit(cubic_table, 2, 100)
        fit = decay_fit(scaled, 2, 100)
        assert abs(fit.slope - base.slope) < 1e-9
        assert abs(fit.intercept - base.intercept - math.log(scale)) < 1e-9

    def test_sign_change_spike_excluded_and_counted(self, cubic_table):
        values = list(cubic_table.values)
        with mp.workprec(64):
            values[50] = mpf("1e-40")  # a near-zero dip, as at a sign change
            values[60] = mpf(0)
        spiky = CoefficientTable(
            kind="A",
            k_max=cubic_table.k_max,
            target_bits=64,
            values=tuple(values),
            error_bound_exponents=cubic_table.error_bound_exponents,
        )
        fit = decay_fit(spiky, 2, 100)
        assert fit.excluded_count == 2
        assert abs(fit.slope + 3) < 1e-8

    def test_precision_floor_exclusion(self, cubic_table):
        errs = list(cubic_table.error_bound_exponents)
        errs[70] = -10  # bound 2^-10 dwarfs |c_70| ~ 2.9e-6
        noisy = CoefficientTable(
            kind="A",
            k_max=cubic_table.k_max,
            target_bits=64,
            values=cubic_table.values,
            error_bound_exponents=tuple(errs),
        )
        fit = decay_fit(noisy, 2, 100)
        assert fit.excluded_count == 1

    def test_insufficient_points(self, cubic_table):
        with pytest.raises(ValueError, match="insufficient"):
            decay_fit(cubic_table, 2, 10)  # nine candidates only

    def test_range_validation(self, cubic_table):
        with pytest.raises(ValueError):
            decay_fit(cubic_table, 1, 50)
        with pytest.raises(ValueError):
            decay_fit(cubic_table, 30, 30)
        with pytest.raises(ValueError):
            decay_fit(cubic_table, 2, 101)


class TestDecayFitOnCoefficients:
    def test_a_slope_is_steep(self, table_a400_128):
        fit = decay_fit(table_a400_128, 50, 200)
        assert fit.slope < -4

    def test_a_decay_steepens(self, table_a400_128):
        low = decay_fit(table_a400_128, 50, 100)
        high = decay_fit(table_a400_128, 100, 200)
        assert high.slope < low.slope

    def test_b_slope_beats_criterion_exponent(self, table_b1000_160):
        # at desk scale the b_k sequence is dominated by a clean k^-2 term
        # (first trivial zeta zero); the -3/4 oscillation has far too small an
        # amplitude to surface below k ~ 10^3.  The criterion only needs decay
        # faster than k^(-3/4), which holds with lots of room.
        fit = decay_fit(table_b1000_160, 100, 1000)
        assert fit.slope < -0.75
        assert -2.2 < fit.slope
        assert fit.max_abs_residual < 0.1  # very close to a pure power law


class TestRhDiagnostic:
    def test_row_count_and_first_row(self, table_b1000_160):
        rows = rh_diagnostic(table_b1000_160, 1, 50)
        assert len(rows) == 50
        k, scaled, with_log = rows[0]
        assert k == 1
        with mp.workprec(96):
            assert abs(scaled - mpf("0.31601130106756353836")) < mpf("1e-18")
        assert with_log == 0  # log(1)^2 = 0

    def test_companion_column_scaling(self, table_b1000_160):
        rows = rh_diagnostic(table_b1000_160, 10, 10)
        k, scaled, with_log = rows[0]
        with mp.workprec(200):
            import mpmath

            assert abs(with_log - scaled * mpmath.log(10) ** 2) < mpf("1e-40")

    def test_upper_envelope_decreases(self, table_b1000_160):
        rows = rh_diagnostic(table_b1000_160, 100, 1000)
        col = [r[1] for r in rows]
        thirds = [max(col[:300]), max(col[300:600]), max(col[600:])]
        assert thirds[0] > thirds[1] > thirds[2]

    def test_rejects_a_table(self, table_a400_128):
        with pytest.raises(ValueError):
            rh_diagnostic(table_a400_128, 1, 50)

    def test_range_validation(self, table_b1000_160):
        with pytest.raises(ValueError):
            rh_diagnostic(table_b1000_160, 0, 50)
        with pytest.raises(ValueError):
            rh_diagnostic(table_b1000_160, 5, 1001)
