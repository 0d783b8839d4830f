"""Statistical kernels: quantiles, binomial confidence intervals, beta MLE.

Quantile evaluations are delegated to scipy.special (ndtri, betainc,
betaincinv); the beta maximum-likelihood fit is a method-of-moments start
followed by Newton iterations on the digamma score equations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .angles import ProbInterval

#: Transformed samples are clamped into (CLAMP_DELTA, 1 - CLAMP_DELTA) so the
#: beta log-likelihood stays finite.
CLAMP_DELTA = 1e-9

#: Compact box for the beta MLE shape parameters.
SHAPE_MIN = 1e-3
SHAPE_MAX = 1e6


class DegenerateSampleError(ValueError):
    """All samples coincide after clamping; a beta fit is undefined."""


@dataclass(frozen=True)
class ShotSummary:
    """Counts of binary measurement outcomes."""

    n: int
    successes: int

    def __post_init__(self):
        if not 0 <= self.successes <= self.n:
            raise ValueError(f"successes={self.successes} outside [0, {self.n}]")

    @property
    def mean(self) -> float:
        return self.successes / self.n


def normal_quantile(p: float) -> float:
    """z such that Phi(z) = p, for p strictly inside (0, 1)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p={p} outside (0, 1)")
    return float(special.ndtri(p))


def beta_inv_cdf(q: float, alpha_shape: float, beta_shape: float) -> float:
    """Inverse regularized incomplete beta: x with I_x(alpha, beta) = q."""
    if q <= 0.0:
        return 0.0
    if q >= 1.0:
        return 1.0
    return float(special.betaincinv(alpha_shape, beta_shape, q))


def chernoff_hoeffding_interval(shots: ShotSummary, alpha: float) -> ProbInterval:
    """mean +/- sqrt(log(2/alpha) / (2n)), truncated to [0, 1]."""
    _check_level(alpha)
    radius = math.sqrt(math.log(2.0 / alpha) / (2.0 * shots.n))
    return ProbInterval(max(0.0, shots.mean - radius), min(1.0, shots.mean + radius))


def clopper_pearson_interval(shots: ShotSummary, alpha: float) -> ProbInterval:
    """Equal-tailed exact binomial interval from beta quantiles."""
    _check_level(alpha)
    n, s = shots.n, shots.successes
    lo = 0.0 if s == 0 else beta_inv_cdf(alpha / 2.0, s, n - s + 1)
    hi = 1.0 if s == n else beta_inv_cdf(1.0 - alpha / 2.0, s + 1, n - s)
    return ProbInterval(lo, hi)


def frequentist_interval(kind: str, shots: ShotSummary, alpha: float) -> ProbInterval:
    if kind == "chernoff_hoeffding":
        return chernoff_hoeffding_interval(shots, alpha)
    if kind == "clopper_pearson":
        return clopper_pearson_interval(shots, alpha)
    raise ValueError(f"unknown interval kind {kind!r}")


def _check_level(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"confidence level alpha={alpha} outside (0, 1)")


def _moment_start(mean: float, var: float) -> tuple[float, float]:
    # Method of moments; falls back to the uniform shapes when the sample
    # variance is incompatible with any beta distribution.
    if var <= 0.0 or var >= mean * (1.0 - mean):
        return 1.0, 1.0
    common = mean * (1.0 - mean) / var - 1.0
    return mean * common, (1.0 - mean) * common


def beta_mle_fit(samples, tol: float = 1e-8, max_iter: int = 200) -> tuple[float, float]:
    """Maximum-likelihood beta shape parameters for samples in (0, 1).

    Samples are clamped into (CLAMP_DELTA, 1 - CLAMP_DELTA).  The score
    equations

        psi(a + b) - psi(a) + mean(log x)     = 0
        psi(a + b) - psi(b) + mean(log(1-x))  = 0

    are solved by damped Newton steps, constrained to the box
    [SHAPE_MIN, SHAPE_MAX]^2.
    """
    x = np.clip(np.asarray(samples, dtype=float), CLAMP_DELTA, 1.0 - CLAMP_DELTA)
    if x.size < 2:
        raise DegenerateSampleError("need at least two samples")
    if np.all(x == x[0]):
        raise DegenerateSampleError("all samples identical after clamping")

    mlog = float(np.mean(np.log(x)))
    mlog1m = float(np.mean(np.log1p(-x)))
    a, b = _moment_start(float(np.mean(x)), float(np.var(x)))
    a = min(max(a, SHAPE_MIN), SHAPE_MAX)
    b = min(max(b, SHAPE_MIN), SHAPE_MAX)

    for _ in range(max_iter):
        psi_ab = special.digamma(a + b)
        g1 = psi_ab - special.digamma(a) + mlog
        g2 = psi_ab - special.digamma(b) + mlog1m
        if max(abs(g1), abs(g2)) < tol:
            break
        tri_ab = special.polygamma(1, a + b)
        h11 = tri_ab - special.polygamma(1, a)
        h22 = tri_ab - special.polygamma(1, b)
        det = h11 * h22 - tri_ab * tri_ab
        if det == 0.0:
            break
        da = -(h22 * g1 - tri_ab * g2) / det
        db = -(h11 * g2 - tri_ab * g1) / det
        # Damp steps that would leave the positive orthant.
        step = 1.0
        while a + step * da <= 0.0 or b + step * db <= 0.0:
            step *= 0.5
        a = min(max(a + step * da, SHAPE_MIN), SHAPE_MAX)
        b = min(max(b + step * db, SHAPE_MIN), SHAPE_MAX)
    return float(a), float(b)
