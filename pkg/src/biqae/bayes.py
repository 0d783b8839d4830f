"""Conjugate Bayesian machinery for the per-stage target probability.

Two conjugate families model the amplified success probability of the
current stage: a normal family updated under the normal approximation to
the binomial likelihood, and a beta family updated exactly.  Stage
transitions push the posterior through the probability map of the next
amplification factor: in closed form via the delta method for the normal
family, and by transform-and-refit sampling for the beta family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import angles, kernels
from .angles import ProbInterval
from .kernels import ShotSummary


class SingularTransformError(ValueError):
    """Prior transform is undefined because the posterior mean sits at 0 or 1."""


@dataclass(frozen=True)
class NormalParams:
    """Mean/variance of a normal distribution over a probability.

    ``variance = math.inf`` encodes the noninformative prior.
    """

    mean: float
    variance: float

    def __post_init__(self):
        if not self.variance > 0.0:
            raise ValueError(f"variance={self.variance} must be positive")

    @property
    def noninformative(self) -> bool:
        return math.isinf(self.variance)


@dataclass(frozen=True)
class BetaParams:
    """Shape parameters of a beta distribution."""

    alpha_shape: float
    beta_shape: float

    def __post_init__(self):
        if self.alpha_shape <= 0.0 or self.beta_shape <= 0.0:
            raise ValueError("beta shapes must be positive")

    @property
    def mean(self) -> float:
        return self.alpha_shape / (self.alpha_shape + self.beta_shape)

    @property
    def variance(self) -> float:
        s = self.alpha_shape + self.beta_shape
        return self.alpha_shape * self.beta_shape / (s * s * (s + 1.0))


NONINFORMATIVE_NORMAL = NormalParams(mean=0.5, variance=math.inf)
NONINFORMATIVE_BETA = BetaParams(alpha_shape=0.5, beta_shape=0.5)


def _plugin_variance(shots: ShotSummary) -> float:
    # All-zero or all-one batches would give zero plug-in variance and an
    # infinite precision; clamp the mean into [1/(2n), 1 - 1/(2n)] first.
    guard = 1.0 / (2.0 * shots.n)
    m = min(max(shots.mean, guard), 1.0 - guard)
    return m * (1.0 - m)


def normal_posterior_update(prior: NormalParams, shots: ShotSummary) -> NormalParams:
    """Precision-weighted combination of the prior with the sample mean."""
    sigma2_over_n = _plugin_variance(shots) / shots.n
    if prior.noninformative:
        return NormalParams(shots.mean, sigma2_over_n)
    prec = 1.0 / prior.variance + 1.0 / sigma2_over_n
    mean = (prior.mean / prior.variance + shots.mean / sigma2_over_n) / prec
    return NormalParams(mean, 1.0 / prec)


def beta_posterior_update(prior: BetaParams, shots: ShotSummary | None) -> BetaParams:
    """Add success/failure counts to the shape parameters."""
    if shots is None or shots.n == 0:
        return prior
    return BetaParams(
        prior.alpha_shape + shots.successes,
        prior.beta_shape + (shots.n - shots.successes),
    )


def credible_interval(posterior: NormalParams | BetaParams, alpha: float) -> ProbInterval:
    """Equal-tailed posterior interval at level alpha, truncated to [0, 1]."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"level alpha={alpha} outside (0, 1)")
    if isinstance(posterior, NormalParams):
        z = kernels.normal_quantile(1.0 - alpha / 2.0)
        sd = math.sqrt(posterior.variance)
        return ProbInterval(
            max(0.0, posterior.mean - z * sd), min(1.0, posterior.mean + z * sd)
        )
    return ProbInterval(
        kernels.beta_inv_cdf(alpha / 2.0, posterior.alpha_shape, posterior.beta_shape),
        kernels.beta_inv_cdf(1.0 - alpha / 2.0, posterior.alpha_shape, posterior.beta_shape),
    )


def probability_map(x: float, K_t: int, K_next: int, l: int) -> float:
    """Push a stage-t probability to the next stage: sin^2(K_next * f_t(x))."""
    return angles.angle_to_amplitude(K_next * angles.branch_angle(x, K_t, l))


def normal_prior_transform(
    posterior: NormalParams, K_t: int, K_next: int, l: int
) -> NormalParams:
    """Delta-method image of a normal posterior under the probability map."""
    mu = posterior.mean
    if mu <= 0.0 or mu >= 1.0:
        raise SingularTransformError(f"posterior mean {mu} at the boundary")
    if posterior.noninformative:
        raise SingularTransformError("cannot transform a noninformative prior")
    mu_next = probability_map(mu, K_t, K_next, l)
    ratio = (K_next / K_t) ** 2
    variance = ratio * (mu_next * (1.0 - mu_next)) / (mu * (1.0 - mu)) * posterior.variance
    if variance <= 0.0:
        raise SingularTransformError(f"transformed mean {mu_next} at the boundary")
    return NormalParams(mu_next, variance)


def beta_prior_transform(
    posterior: BetaParams,
    K_t: int,
    K_next: int,
    l: int,
    rng: np.random.Generator,
    sample_count: int = 1000,
) -> BetaParams:
    """Sample the posterior, push each draw through the probability map, refit.

    Raises DegenerateSampleError (via the MLE) when the transformed sample
    collapses to a point.
    """
    if sample_count < 100:
        raise ValueError(f"sample_count={sample_count} below 100")
    y = rng.beta(posterior.alpha_shape, posterior.beta_shape, size=sample_count)
    theta = (np.arcsin(np.sqrt(y)) if l % 2 == 0 else np.arccos(np.sqrt(y)))
    theta = (theta + l * angles.HALF_PI) / K_t
    mapped = np.sin(K_next * theta) ** 2
    a, b = kernels.beta_mle_fit(mapped)
    return BetaParams(a, b)
