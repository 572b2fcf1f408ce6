"""Weight tables and operator actions: recurrence vs closed form, dual routes."""

import random

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf, mpc

from dunkldyn.dunkl import (
    DunklWeights,
    WeightedShift,
    apply_dunkl,
    apply_dunkl_direct,
    critical_rate_mu,
    right_inverse,
    shift_hypercyclicity_diagnostic,
)
from dunkldyn.series import TruncatedSeries

ALPHAS = ["-0.49", "0", "0.5", "1", "3"]


def weights_by_integer_recurrence(alpha, n_max):
    """Independent oracle: a_n as exact rationals when alpha is rational."""
    from fractions import Fraction

    alpha = Fraction(alpha) if "." not in str(alpha) else Fraction(str(alpha))
    d = [Fraction(1)]
    for n in range(1, n_max + 1):
        a_n = Fraction(n) if n % 2 == 0 else Fraction(n) + 2 * alpha + 1
        d.append(d[-1] * a_n)
    return d


class TestWeights:
    def test_alpha_domain(self):
        with pytest.raises(ValueError):
            DunklWeights(-0.5, 4)
        with pytest.raises(ValueError):
            DunklWeights(-2, 4)
        DunklWeights(-0.49, 4)

    def test_small_table_against_rational_oracle(self):
        for alpha_s in ["0", "0.5", "1", "3", "-0.25"]:
            w = DunklWeights(mpf(alpha_s), 24)
            oracle = weights_by_integer_recurrence(alpha_s, 24)
            for n in range(25):
                want = mpf(oracle[n].numerator) / oracle[n].denominator
                got = w.weight(n).to_real()
                assert abs(got - want) <= want * mpf(2) ** -240

    @pytest.mark.parametrize("alpha_s", ALPHAS)
    def test_gamma_closed_form_matches_recurrence(self, alpha_s):
        w = DunklWeights(mpf(alpha_s), 600)
        for n in range(601):
            lhs = w.log_weight(n)
            rhs = w.gamma_form_log_weight(n)
            assert abs(lhs - rhs) <= max(mpf(1), abs(lhs)) * mpf(2) ** (20 - mp.prec)

    def test_ratio_accessor(self):
        w = DunklWeights(mpf("0.5"), 10)
        # a_1 = 1 + 2(0.5) + 1 = 3, a_2 = 2, a_3 = 3 + 2 = 5
        assert abs(w.ratio(1) - 3) < mpf(2) ** -250
        assert abs(w.ratio(2) - 2) < mpf(2) ** -250
        assert abs(w.ratio(3) - 5) < mpf(2) ** -250
        with pytest.raises(IndexError):
            w.ratio(0)
        with pytest.raises(IndexError):
            w.log_weight(11)

    def test_maclane_preset_is_factorial(self):
        s = WeightedShift.maclane(500)
        fact_log = mpf(0)
        for n in range(1, 501):
            fact_log += mpmath.ln(n)
            assert abs(s.cumlog[n] - fact_log) <= abs(fact_log) * mpf("1e-30")

    def test_from_dunkl_matches_table(self):
        w = DunklWeights(1, 50)
        s = WeightedShift.from_dunkl(w)
        for n in range(1, 51):
            assert abs(s.cumlog[n] - w.log_weight(n)) < mpf(2) ** -230


class TestOperator:
    def test_monomial_action(self):
        # L^k z^n = (d_n / d_{n-k}) z^{n-k}; L^k z^n = 0 for k > n
        w = DunklWeights(mpf("0.5"), 16)
        f = TruncatedSeries.monomial(5, 1, trunc_degree=16)
        g = apply_dunkl(f, w, 2)
        assert g.degree() == 3
        want = mpmath.exp(w.log_weight(5) - w.log_weight(3))
        assert abs(g.coeff(3) - want) < want * mpf(2) ** -240
        assert apply_dunkl(f, w, 6).is_zero()
        assert apply_dunkl(f, w, 5).coeff(0) != 0

    def test_one_step_formula(self):
        # L(z^2) = 2z regardless of alpha parity shift; L(z) = (2 alpha + 2)
        w = DunklWeights(0, 8)
        g = apply_dunkl(TruncatedSeries.monomial(2, 1, trunc_degree=8), w)
        assert g.degree() == 1 and abs(g.coeff(1) - 2) < mpf(2) ** -250
        w2 = DunklWeights(mpf("0.5"), 8)
        h = apply_dunkl(TruncatedSeries.monomial(1, 1, trunc_degree=8), w2)
        assert h.degree() == 0 and abs(h.coeff(0) - 3) < mpf(2) ** -250

    @given(
        st.dictionaries(st.integers(0, 32), st.integers(-20, 20), max_size=10),
        st.integers(0, 6),
        st.sampled_from(ALPHAS),
    )
    @settings(deadline=None, max_examples=50)
    def test_table_route_equals_direct_route(self, coeffs, k, alpha_s):
        mp.prec = 256
        w = DunklWeights(mpf(alpha_s), 64)
        f = TruncatedSeries(coeffs, trunc_degree=64)
        a = apply_dunkl(f, w, k)
        b = apply_dunkl_direct(f, w, k)
        assert a.trunc_degree == b.trunc_degree
        for n in range(65):
            ca, cb = a.coeff(n), b.coeff(n)
            scale = max(abs(ca), abs(cb))
            if scale == 0:
                continue
            assert abs(ca - cb) <= scale * mpf(2) ** (30 - mp.prec)

    def test_right_inverse_is_right_inverse(self):
        w = DunklWeights(mpf("1"), 64)
        f = TruncatedSeries({0: 2, 3: -1, 7: mpf("0.25")}, trunc_degree=64)
        for n in (1, 2, 5):
            g = right_inverse(f, w, n)
            back = apply_dunkl(g, w, n)
            for i in range(65):
                assert abs(back.coeff(i) - f.coeff(i)) <= max(
                    mpf(1), abs(f.coeff(i))
                ) * mpf(2) ** -230

    def test_right_inverse_overflow_guard(self):
        w = DunklWeights(0, 64)
        f = TruncatedSeries.monomial(60, 1, trunc_degree=64)
        with pytest.raises(ValueError):
            right_inverse(f, w, 5)

    def test_table_too_short(self):
        w = DunklWeights(0, 4)
        f = TruncatedSeries.monomial(6, 1, trunc_degree=8)
        with pytest.raises(ValueError):
            apply_dunkl(f, w, 1)


class TestShiftDiagnostics:
    def test_maclane_growth_certificate(self):
        s = WeightedShift.maclane(200)
        diag = shift_hypercyclicity_diagnostic(s)
        # (n!)^(1/n) ~ n/e grows without bound; running sup must be strictly
        # climbing at the tail and equal g at the horizon
        assert diag.final_sup() == diag.g[-1]
        assert diag.running_sup[-1] > diag.running_sup[99]

    def test_bounded_shift_flat_certificate(self):
        s = WeightedShift([mpf(1)] * 100)
        diag = shift_hypercyclicity_diagnostic(s)
        assert diag.final_sup() == 1

    def test_critical_rate_mu_factorial(self):
        # mu(r) = max_n r^n / n!; at r = 10 the max over n sits at n in {9, 10}
        # (tie: 10^9/9! = 10^10/10!) and equals 10^10/10!
        s = WeightedShift.maclane(64)
        mu, n_star = critical_rate_mu(s, 10)
        assert n_star in (9, 10)
        want = mpf(10) ** 10 / mpmath.factorial(10)
        assert abs(mu.to_real() - want) <= want * mpf(2) ** -230

    def test_critical_rate_mu_small_r(self):
        s = WeightedShift.maclane(64)
        mu, n_star = critical_rate_mu(s, mpf("0.5"))
        assert n_star == 0 and mu.to_real() == 1
