"""Tests for the Mittag-Leffler family and companion series.

Fixed-point expected values were computed once with a 40-digit mpmath
direct summation of the defining series and frozen here.
"""

import math

import pytest
import scipy.special as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mittag_kinetics.errors import DomainError, NonConvergence, PoleError
from mittag_kinetics.special_functions import (
    HFunctionParams,
    MLParams,
    SeriesConfig,
    WrightParams,
    f_function,
    h_integrand,
    hyp1f1,
    ml_eval,
    pochhammer,
    r_function,
    wright_eval,
)


class TestPochhammer:
    def test_frozen_value(self):
        assert pochhammer(2.5, 3) == pytest.approx(39.375, rel=0, abs=0)

    def test_k_zero_is_one(self):
        assert pochhammer(-7.3, 0) == 1.0

    def test_negative_k_rejected(self):
        with pytest.raises(DomainError):
            pochhammer(1.0, -1)

    @given(
        gamma=st.floats(0.1, 10.0),
        k=st.integers(0, 20),
    )
    @settings(max_examples=60, deadline=None)
    def test_gamma_ratio_identity(self, gamma, k):
        # (gamma)_k = Gamma(gamma + k) / Gamma(gamma) for gamma > 0
        expected = math.exp(math.lgamma(gamma + k) - math.lgamma(gamma))
        assert pochhammer(gamma, k) == pytest.approx(expected, rel=1e-10)

    @given(gamma=st.floats(-5.0, 5.0), k=st.integers(0, 15))
    @settings(max_examples=60, deadline=None)
    def test_recurrence(self, gamma, k):
        assert pochhammer(gamma, k + 1) == pytest.approx(
            pochhammer(gamma, k) * (gamma + k), rel=1e-12, abs=1e-300
        )


class TestMLEval:
    # (nu, mu, gamma, z, expected) frozen from 40-digit summation
    FROZEN = [
        (0.5, 0.5, 1.0, -1.0, 0.1366060073919492825373),
        (1.0, 1.0, 1.0, 1.0, math.e),
        (1.0, 2.0, 1.0, 1.0, math.e - 1.0),
        (0.7, 1.4, 2.0, -0.8, 0.3192353349624176798322),
        (0.5, 0.9, 1.0, -2.0, 0.2192015769045745607669),
    ]

    @pytest.mark.parametrize("nu,mu,gamma,z,expected", FROZEN)
    def test_frozen_values(self, nu, mu, gamma, z, expected):
        got = ml_eval(MLParams(nu=nu, mu=mu, gamma=gamma), z)
        assert got == pytest.approx(expected, rel=1e-13)

    def test_cosine_zero(self):
        # E_2(-x^2) = cos(x); pi/2 is a zero
        got = ml_eval(MLParams(nu=2.0), -((math.pi / 2.0) ** 2))
        assert abs(got) <= 1e-10

    def test_z_zero(self):
        assert ml_eval(MLParams(nu=0.7, mu=1.3), 0.0) == pytest.approx(
            1.0 / math.gamma(1.3), rel=1e-15
        )

    def test_domain_bound_refused(self):
        with pytest.raises(DomainError):
            ml_eval(MLParams(nu=0.5), 50.0 + 1e-9)

    def test_domain_bound_configurable(self):
        cfg = SeriesConfig(max_abs_z=80.0)
        assert ml_eval(MLParams(nu=1.0), 60.0, cfg) == pytest.approx(math.exp(60.0), rel=1e-11)

    def test_nonconvergence_on_tiny_budget(self):
        with pytest.raises(NonConvergence):
            ml_eval(MLParams(nu=0.3), 40.0, SeriesConfig(max_terms=20))

    def test_negative_integer_gamma_truncates(self):
        # (gamma)_k vanishes for k > 2 when gamma = -2: a 3-term polynomial
        p = MLParams(nu=1.0, mu=1.0, gamma=-2.0)
        z = 0.6
        expected = (
            1.0 / math.gamma(1.0)
            + (-2.0) * z / math.gamma(2.0)
            + (-2.0 * -1.0) / 2.0 * z * z / math.gamma(3.0)
        )
        assert ml_eval(p, z) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("bad", [dict(nu=0.0), dict(nu=-1.0), dict(nu=1.0, mu=0.0), dict(nu=1.0, gamma=0.0)])
    def test_invalid_params(self, bad):
        with pytest.raises(DomainError):
            MLParams(**bad)

    @given(
        nu=st.floats(0.3, 2.0),
        mu=st.floats(0.3, 3.0),
        z=st.floats(-2.0, 2.0),
    )
    @settings(max_examples=80, deadline=None)
    def test_matches_naive_direct_sum(self, nu, mu, z):
        # independent route: plain float summation without log-space terms.
        # The naive sum itself loses digits to cancellation for negative z,
        # so the tolerance reflects its error, not ml_eval's.
        direct = 0.0
        for k in range(600):
            arg = mu + k * nu
            if arg > 170.0:  # math.gamma overflow bound
                break
            term = z**k / math.gamma(arg)
            direct += term
            if abs(term) < 1e-22 and k > 3:
                break
        got = ml_eval(MLParams(nu=nu, mu=mu), z)
        assert got == pytest.approx(direct, rel=5e-8, abs=1e-10)

    @given(
        nu=st.floats(0.45, 1.0),
        x1=st.floats(0.0, 6.0),
        dx=st.floats(0.0, 4.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_complete_monotonicity_proxy(self, nu, x1, dx):
        # E_nu(-x) is completely monotone for 0 < nu <= 1: nonincreasing in x
        p = MLParams(nu=nu)
        a = ml_eval(p, -x1)
        b = ml_eval(p, -(x1 + dx))
        assert b <= a + 1e-9
        assert -1e-9 <= b <= 1.0 + 1e-12

    def test_cancellation_regime_stays_accurate(self):
        # E_{1/2}(-x) = exp(x^2) erfc(x): a plain double summation of the
        # series returns noise here; the fallback must not
        got = ml_eval(MLParams(nu=0.5), -6.0)
        expected = math.exp(36.0) * sp.erfc(6.0)
        assert got == pytest.approx(expected, rel=1e-10)

    @pytest.mark.parametrize("nu", [0.3, 0.5, 1.0, 1.7])
    @pytest.mark.parametrize("mu", [0.5, 1.0, 2.2])
    @pytest.mark.parametrize("z", [-5.0, -2.0, 0.7, 5.0])
    def test_two_param_series_identity(self, nu, mu, z):
        # gamma=1 must reproduce the plain two-parameter series; the
        # reference is a wide-precision mpmath summation of that series
        # (nu=0.3, z=-5 cancels through ~87 orders of magnitude, so the
        # oracle works at 130 digits)
        import mpmath as mp

        with mp.workdps(130):
            total = mp.mpf(0)
            zz = mp.mpf(z)
            nu_mp, mu_mp = mp.mpf(nu), mp.mpf(mu)
            powk = mp.mpf(1)
            for k in range(5000):
                # Gamma argument built in mpf: float(mu + k*nu) rounding
                # would perturb huge terms and wreck the cancellation
                term = powk / mp.gamma(mu_mp + nu_mp * k)
                total += term
                if abs(term) < mp.mpf("1e-120") * (abs(total) + mp.mpf("1e-120")):
                    break
                powk *= zz
            expected = float(total)
        assert ml_eval(MLParams(nu=nu, mu=mu), z) == pytest.approx(expected, rel=1e-12, abs=1e-15)

    @pytest.mark.parametrize(
        "nu,mu,x",
        [(0.7, 1.5, -0.9), (0.5, 2.0, 0.8), (1.2, 1.8, -2.5), (0.9, 1.1, 1.7)],
    )
    def test_three_param_contiguous_identity(self, nu, mu, x):
        # E^2[nu,mu](x) = (E[nu,mu-1](x) + (1 - mu + nu) E[nu,mu](x)) / nu
        lhs = ml_eval(MLParams(nu=nu, mu=mu, gamma=2.0), x)
        rhs = (
            ml_eval(MLParams(nu=nu, mu=mu - 1.0), x)
            + (1.0 - mu + nu) * ml_eval(MLParams(nu=nu, mu=mu), x)
        ) / nu
        assert lhs == pytest.approx(rhs, rel=1e-11)


class TestResponseFunctions:
    def test_r_function_frozen(self):
        got = r_function(nu=0.8, mu=0.3, a=-1.0, delta=0.5, t=1.5)
        assert got == pytest.approx(0.03270086451789556348903, rel=1e-13)

    def test_f_function_frozen(self):
        got = f_function(q=0.6, a=1.3, t=0.9)
        assert got == pytest.approx(0.1400551515663327243424, rel=1e-13)

    def test_f_exponential_at_q_one(self):
        assert f_function(q=1.0, a=2.0, t=1.25) == pytest.approx(math.exp(-2.5), rel=1e-13)

    def test_r_region_guards(self):
        with pytest.raises(DomainError):
            r_function(nu=0.8, mu=0.3, a=-1.0, delta=0.5, t=0.5)
        with pytest.raises(DomainError):
            r_function(nu=0.5, mu=0.5, a=-1.0, delta=0.0, t=1.0)

    def test_f_guards(self):
        with pytest.raises(DomainError):
            f_function(q=0.0, a=1.0, t=1.0)
        with pytest.raises(DomainError):
            f_function(q=0.5, a=1.0, t=0.0)

    @given(
        q=st.floats(0.3, 2.0),
        a=st.floats(-2.0, 2.0),
        t=st.floats(0.1, 2.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_f_is_r_at_zero_delay(self, q, a, t):
        # F[q](a, t) = R[q, 0](-a, 0, t)
        assert f_function(q, a, t) == pytest.approx(
            r_function(q, 0.0, -a, 0.0, t), rel=1e-12, abs=1e-300
        )

    @pytest.mark.parametrize("q", [0.3, 0.5, 1.0, 1.7])
    @pytest.mark.parametrize("a", [0.5, 2.0])
    @pytest.mark.parametrize("t", [0.4, 1.1, 3.0])
    def test_f_matches_direct_series(self, q, a, t):
        # direct form: sum_n (-a)^n t^((n+1)q - 1) / Gamma(q + n q),
        # summed in wide precision as an independent oracle
        import mpmath as mp

        with mp.workdps(80):
            aa, tt, qq = mp.mpf(a), mp.mpf(t), mp.mpf(q)
            total = mp.mpf(0)
            for n in range(3000):
                term = (-aa) ** n * tt ** ((n + 1) * qq - 1) / mp.gamma(qq + n * qq)
                total += term
                if abs(term) < mp.mpf("1e-60") * (abs(total) + mp.mpf("1e-60")):
                    break
            expected = float(total)
        assert f_function(q, a, t) == pytest.approx(expected, rel=1e-10, abs=1e-14)


class TestWright:
    def test_reduces_to_ml(self):
        # 1psi1 with (1,1); (mu,nu) is exactly E[nu,mu]
        p = WrightParams(upper=((1.0, 1.0),), lower=((0.9, 0.5),))
        assert wright_eval(p, -2.0) == pytest.approx(0.2192015769045745607669, rel=1e-12)

    @given(
        nu=st.floats(0.3, 1.5),
        mu=st.floats(0.3, 2.5),
        z=st.floats(-3.0, 3.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_ml_reduction_property(self, nu, mu, z):
        p = WrightParams(upper=((1.0, 1.0),), lower=((mu, nu),))
        assert wright_eval(p, z) == pytest.approx(
            ml_eval(MLParams(nu=nu, mu=mu), z), rel=1e-9, abs=1e-12
        )

    @pytest.mark.parametrize("alpha,beta", [(0.5, 1.0), (0.3, 0.9), (1.2, 2.0)])
    @pytest.mark.parametrize("z", [-5.0, -1.0, 2.0, 5.0])
    def test_ml_reduction_grid(self, alpha, beta, z):
        # the two routes use different code paths (gamma-list log terms
        # vs incremental Pochhammer recurrence)
        p = WrightParams(upper=((1.0, 1.0),), lower=((beta, alpha),))
        assert wright_eval(p, z) == pytest.approx(
            ml_eval(MLParams(nu=alpha, mu=beta), z), rel=1e-12, abs=1e-15
        )

    def test_lower_pole_zeroes_term(self):
        # (1,1); (0,1): k=0 term dies on the Gamma(0) pole, and the
        # remainder is sum_{k>=1} z^k/(k-1)! = z e^z
        p = WrightParams(upper=((1.0, 1.0),), lower=((0.0, 1.0),))
        z = 0.7
        assert wright_eval(p, z) == pytest.approx(z * math.exp(z), rel=1e-12)

    def test_upper_pole_raises(self):
        p = WrightParams(upper=((-0.5, 0.25),), lower=((1.0, 1.0),))
        with pytest.raises(PoleError):
            wright_eval(p, 0.5)

    def test_convergence_condition_enforced(self):
        with pytest.raises(DomainError):
            WrightParams(upper=((1.0, 1.0), (1.0, 1.0)), lower=((1.0, 0.5),))

    def test_exponential_case(self):
        # 0psi0 is the plain exponential
        p = WrightParams(upper=(), lower=())
        assert wright_eval(p, 1.3) == pytest.approx(math.exp(1.3), rel=1e-13)


class TestHyp1f1:
    def test_frozen_value(self):
        assert hyp1f1(1.5, 2.5, -3.0) == pytest.approx(0.2272782459317874320295, rel=1e-12)

    def test_beta_pole_rejected(self):
        with pytest.raises(DomainError):
            hyp1f1(1.0, 0.0, 0.5)
        with pytest.raises(DomainError):
            hyp1f1(1.0, -2.0, 0.5)

    @given(
        g1=st.floats(0.2, 4.0),
        b1=st.floats(0.2, 4.0),
        x=st.floats(-5.0, 5.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_matches_scipy(self, g1, b1, x):
        ref = sp.hyp1f1(g1, b1, x)
        assume(math.isfinite(ref))  # scipy returns nan on some edge draws
        assert hyp1f1(g1, b1, x) == pytest.approx(ref, rel=1e-9, abs=1e-12)


class TestHIntegrand:
    # orders of the two-parameter Mittag-Leffler representation:
    # g(s) = Gamma(s) Gamma(1-s) / Gamma(beta - alpha s)
    def ml_params(self, alpha, beta):
        return HFunctionParams(
            m=1, n=1, upper=((0.0, 1.0),), lower=((0.0, 1.0), (1.0 - beta, alpha))
        )

    def test_matches_direct_gamma_product(self):
        alpha, beta = 0.7, 1.2
        p = self.ml_params(alpha, beta)
        s = 0.4 + 0.7j
        expected = sp.gamma(s) * sp.gamma(1.0 - s) / sp.gamma(beta - alpha * s)
        got = h_integrand(p, s)
        assert got == pytest.approx(expected, rel=1e-11)

    @pytest.mark.parametrize("s", [0.0, 1.0, 2.0, -1.0])
    def test_pole_points_raise(self, s):
        p = self.ml_params(0.7, 1.2)
        with pytest.raises(PoleError):
            h_integrand(p, s)

    def test_reflection_identity_on_line(self):
        # with the (0,1),(0,1) pair the numerator is Gamma(s)Gamma(1-s)
        # = pi / sin(pi s)
        alpha, beta = 0.5, 1.0
        p = self.ml_params(alpha, beta)
        s = 0.5 + 1.25j
        expected = (math.pi / cmath_sin_pi(s)) / sp.gamma(beta - alpha * s)
        assert h_integrand(p, s) == pytest.approx(expected, rel=1e-11)

    def test_order_validation(self):
        with pytest.raises(DomainError):
            HFunctionParams(m=2, n=0, upper=(), lower=((1.0, 1.0),))
        with pytest.raises(DomainError):
            HFunctionParams(m=0, n=1, upper=(), lower=())
        with pytest.raises(DomainError):
            HFunctionParams(m=1, n=0, upper=(), lower=((1.0, -1.0),))


def cmath_sin_pi(s):
    import cmath

    return cmath.sin(cmath.pi * s)
