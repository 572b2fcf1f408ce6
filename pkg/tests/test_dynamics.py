"""Orbit diagnostics at the origin and the growth-constant sweep."""

import mpmath
import pytest
from mpmath import mp, mpf

from dunkldyn.construct import BuilderConfig, build_hypercyclic
from dunkldyn.dunkl import DunklWeights, WeightedShift
from dunkldyn.dynamics import (
    OrbitReport,
    Thm3bReport,
    orbit_at_zero,
    thm3b_bound_check,
    windowed_c_star,
)
from dunkldyn.growth import RateEnvelope, standard_r_grid
from dunkldyn.series import TruncatedSeries, exp_truncation


class TestOrbitAtZero:
    def test_monomial_spike(self):
        # z^10 / d_10 has orbit value exactly 1 at step 10 and 0 elsewhere
        w = DunklWeights(mpf("0.5"), 64)
        f = TruncatedSeries({10: mpmath.exp(-w.log_weight(10))}, trunc_degree=64)
        report = orbit_at_zero(f, w, 64)
        assert report.sup_index == 10
        assert abs(report.orbit_sup().to_real() - 1) < mpf(2) ** -240
        for n, v in enumerate(report.values):
            if n == 10:
                continue
            assert v.is_zero

    def test_coefficient_identity(self):
        # v_n = c_n * d_n, checked against an independent weight recurrence
        w = DunklWeights(1, 64)
        coeffs = {0: mpf(3), 3: mpf("-0.25"), 7: mpf("1e-40"), 12: mpf(2) ** 100}
        f = TruncatedSeries(dict(coeffs), trunc_degree=64)
        report = orbit_at_zero(f, w, 16)
        d = mpf(1)
        for n in range(17):
            if n > 0:
                d *= n if n % 2 == 0 else n + 2 * 1 + 1
            if n in coeffs:
                want = coeffs[n] * d
                got = report.values[n]
                assert abs(got.to_real() - want) <= abs(want) * mpf(2) ** -200
            else:
                assert report.values[n].is_zero

    def test_maclane_exponential_orbit_is_constant(self):
        # with a_n = n the truncated exponential orbit sits at 1 forever
        shift = WeightedShift.maclane(256)
        f = exp_truncation(256, 256)
        report = orbit_at_zero(f, shift, 256)
        assert report.sup_index == 0
        assert report.bounded
        for v in report.values:
            assert abs(v.to_real() - 1) < mpf("1e-60")

    def test_zero_function(self):
        w = DunklWeights(0, 32)
        f = TruncatedSeries({}, trunc_degree=32)
        report = orbit_at_zero(f, w, 32)
        assert report.orbit_sup().is_zero
        assert report.bounded

    def test_growing_orbit_not_bounded(self):
        # constant coefficients against Dunkl weights blow up like d_n
        w = DunklWeights(0, 128)
        f = TruncatedSeries({n: mpf(1) for n in range(129)}, trunc_degree=128)
        report = orbit_at_zero(f, w, 128)
        assert not report.bounded
        assert report.sup_index == 128

    def test_horizon_validation(self):
        w = DunklWeights(0, 32)
        f = TruncatedSeries({0: mpf(1)}, trunc_degree=16)
        with pytest.raises(ValueError):
            orbit_at_zero(f, w, 17)
        with pytest.raises(ValueError):
            orbit_at_zero(TruncatedSeries({0: mpf(1)}, trunc_degree=64), w, 48)

    def test_report_values_length(self):
        w = DunklWeights(0, 32)
        f = TruncatedSeries({2: mpf(5)}, trunc_degree=32)
        report = orbit_at_zero(f, w, 20)
        assert len(report.values) == 21


class TestThm3b:
    def test_constant_function_peak(self):
        # M_1(1, r) = 1, so the sweep maximizes r^(a+1) e^(-r) at r = a+1
        w = DunklWeights(0, 64)
        f = TruncatedSeries({0: mpf(1)}, trunc_degree=64)
        report = thm3b_bound_check(f, w, standard_r_grid(0.01, 10, 32), 16)
        assert abs(report.c_star - mpmath.exp(-1)) < mpf("1e-30")
        assert abs(report.r_peak - 1) < mpf("1e-30")
        assert report.consistent
        assert abs(report.orbit_sup.to_real() - 1) < mpf(2) ** -240

    def test_tuple_unpacking(self):
        w = DunklWeights(mpf("0.5"), 64)
        f = TruncatedSeries({0: mpf(2)}, trunc_degree=64)
        c_star, orbit_sup, consistent = thm3b_bound_check(
            f, w, standard_r_grid(0.01, 10, 32), 16
        )
        assert c_star > 0
        assert consistent

    def test_built_function_consistent(self):
        w = DunklWeights(0, 4096)
        env = RateEnvelope.log_growth()
        f, plan = build_hypercyclic(w, env, 2)
        report = thm3b_bound_check(f, w, standard_r_grid(), 600)
        assert report.consistent
        assert report.n_checked == 600

    def test_windowed_ladder_increasing(self):
        w = DunklWeights(0, 4096)
        env = RateEnvelope.log_growth()
        f, plan = build_hypercyclic(w, env, 4)
        ladder = windowed_c_star(
            f, w, standard_r_grid(), (mpf(50), mpf(100), mpf(200), mpf(400))
        )
        assert len(ladder) == 4
        for a, b in zip(ladder, ladder[1:]):
            assert b > a
        assert all(c > 0 for c in ladder)

    def test_windowed_matches_full_sweep_at_top(self):
        # the last window spans the whole grid, so it agrees with the
        # unwindowed constant up to the horizon cap
        w = DunklWeights(mpf("0.5"), 4096)
        env = RateEnvelope.log_growth()
        f, plan = build_hypercyclic(w, env, 2)
        grid = standard_r_grid()
        full = thm3b_bound_check(f, w, grid, int(mpf(400) - mpf("0.5") - 1))
        ladder = windowed_c_star(f, w, grid, (mpf(400),))
        assert abs(ladder[0] - full.c_star) <= full.c_star * mpf("1e-25")
