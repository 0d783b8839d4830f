"""Statistical kernels: quantiles, binomial intervals, beta MLE."""

import math

import numpy as np
import pytest
from scipy import special

from biqae import kernels
from biqae.kernels import (
    DegenerateSampleError,
    ShotSummary,
    beta_inv_cdf,
    beta_mle_fit,
    chernoff_hoeffding_interval,
    clopper_pearson_interval,
    frequentist_interval,
    normal_quantile,
)


def _erf_cdf(z: float) -> float:
    # Independent oracle for the standard normal CDF via math.erf.
    return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))


class TestNormalQuantile:
    def test_median(self):
        assert normal_quantile(0.5) == 0.0

    def test_upper_975(self):
        # Frozen by bisecting the erf-based CDF oracle.
        z = normal_quantile(0.975)
        assert z == pytest.approx(1.959964, abs=1e-6)
        assert _erf_cdf(z) == pytest.approx(0.975, abs=1e-12)

    def test_antisymmetry(self):
        assert normal_quantile(0.025) == pytest.approx(-normal_quantile(0.975))

    def test_endpoints_rejected(self):
        for p in (0.0, 1.0, -0.1, 1.1):
            with pytest.raises(ValueError):
                normal_quantile(p)


class TestShotSummary:
    def test_mean(self):
        assert ShotSummary(10, 7).mean == pytest.approx(0.7)

    def test_validation(self):
        with pytest.raises(ValueError):
            ShotSummary(10, 11)
        with pytest.raises(ValueError):
            ShotSummary(10, -1)


class TestFrequentistIntervals:
    def test_ch_half_width(self):
        # sqrt(ln 40 / 200) around the sample mean.
        iv = chernoff_hoeffding_interval(ShotSummary(100, 50), 0.05)
        radius = math.sqrt(math.log(40.0) / 200.0)
        assert radius == pytest.approx(0.13581, abs=1e-5)
        assert iv.lo == pytest.approx(0.5 - radius)
        assert iv.hi == pytest.approx(0.5 + radius)

    def test_ch_truncation(self):
        iv = chernoff_hoeffding_interval(ShotSummary(10, 0), 0.05)
        assert iv.lo == 0.0

    def test_ch_vanishing_half_width(self):
        r_small = chernoff_hoeffding_interval(ShotSummary(10**8, 5 * 10**7), 0.05)
        assert r_small.radius < 1e-3

    def test_cp_zero_successes(self):
        # Closed form: upper = 1 - (alpha/2)^(1/n).
        iv = clopper_pearson_interval(ShotSummary(10, 0), 0.05)
        assert iv.lo == 0.0
        assert iv.hi == pytest.approx(1.0 - 0.025 ** (1.0 / 10.0), abs=1e-9)
        assert iv.hi == pytest.approx(0.30850, abs=1e-5)

    def test_cp_all_successes(self):
        iv = clopper_pearson_interval(ShotSummary(10, 10), 0.05)
        assert iv.hi == 1.0
        assert iv.lo == pytest.approx(0.025 ** (1.0 / 10.0), abs=1e-9)

    def test_cp_coverage_shape(self):
        iv = clopper_pearson_interval(ShotSummary(100, 50), 0.05)
        assert iv.lo < 0.5 < iv.hi

    def test_dispatch(self):
        s = ShotSummary(100, 50)
        assert frequentist_interval("chernoff_hoeffding", s, 0.05) == \
            chernoff_hoeffding_interval(s, 0.05)
        assert frequentist_interval("clopper_pearson", s, 0.05) == \
            clopper_pearson_interval(s, 0.05)
        with pytest.raises(ValueError):
            frequentist_interval("wilson", s, 0.05)

    def test_invalid_level(self):
        with pytest.raises(ValueError):
            chernoff_hoeffding_interval(ShotSummary(10, 5), 0.0)


class TestBetaInvCdf:
    def test_uniform_median(self):
        assert beta_inv_cdf(0.5, 1.0, 1.0) == pytest.approx(0.5)

    def test_closed_form(self):
        # Beta(1, 10): CDF is 1 - (1-x)^10, so x = 1 - 0.975^(1/10).
        assert beta_inv_cdf(0.025, 1.0, 10.0) == pytest.approx(
            1.0 - 0.975 ** 0.1, abs=1e-10
        )
        assert beta_inv_cdf(0.025, 1.0, 10.0) == pytest.approx(0.0025294, abs=1e-6)

    def test_endpoints(self):
        assert beta_inv_cdf(0.0, 3.0, 4.0) == 0.0
        assert beta_inv_cdf(1.0, 3.0, 4.0) == 1.0

    def test_inverse_consistency_grid(self):
        # I_x(a, b) evaluated at the returned x recovers q within 1e-9.
        for a, b in ((0.5, 0.5), (2.0, 5.0), (30.0, 3.0), (500.0, 500.0)):
            for q in np.linspace(0.01, 0.99, 25):
                x = beta_inv_cdf(float(q), a, b)
                assert special.betainc(a, b, x) == pytest.approx(q, abs=1e-9)


class TestBetaMleFit:
    def test_recovers_known_shapes(self):
        rng = np.random.default_rng(12345)
        samples = rng.beta(2.0, 5.0, size=10**5)
        a, b = beta_mle_fit(samples)
        assert a == pytest.approx(2.0, abs=0.1)
        assert b == pytest.approx(5.0, abs=0.25)

    def test_symmetric_samples_give_equal_shapes(self):
        base = np.linspace(0.05, 0.45, 40)
        samples = np.concatenate([base, 1.0 - base])
        a, b = beta_mle_fit(samples)
        assert abs(a - b) < 1e-6

    def test_identical_samples_rejected(self):
        with pytest.raises(DegenerateSampleError):
            beta_mle_fit([0.3, 0.3])

    def test_single_sample_rejected(self):
        with pytest.raises(DegenerateSampleError):
            beta_mle_fit([0.3])

    def test_boundary_samples_clamped_not_fatal(self):
        a, b = beta_mle_fit([0.0, 1.0, 0.5, 0.5])
        assert a > 0.0 and b > 0.0

    def test_kl_optimality_proxy(self):
        # The fitted shapes' negative log-likelihood on a fresh sample is
        # within 1% of the best over a dense grid of candidates.
        rng = np.random.default_rng(777)
        train = rng.beta(3.0, 4.0, size=20000)
        fresh = rng.beta(3.0, 4.0, size=20000)
        a_fit, b_fit = beta_mle_fit(train)

        def nll(a, b):
            return -float(np.mean(
                (a - 1) * np.log(fresh) + (b - 1) * np.log1p(-fresh)
                - special.betaln(a, b)
            ))

        grid = np.linspace(1.0, 8.0, 71)
        best = min(nll(a, b) for a in grid for b in grid)
        assert nll(a_fit, b_fit) - best <= 0.01 * abs(best) + 1e-9
