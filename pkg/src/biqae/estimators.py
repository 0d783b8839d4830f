"""Estimator state machines: classical sampling, amplified point estimation,
iterative interval estimation (frequentist and Bayesian).

The iterative estimators share one control loop: measure a batch of shots
at the current amplification factor K, rebuild the probability interval
for the amplified success probability, map it back to an angle interval on
the tracked quadrant branch, and either terminate (amplitude radius at
target), advance K per the schedule, or keep measuring.  The Bayesian
variants replace the frequentist interval with a conjugate posterior
credible interval and carry the posterior across stage boundaries through
a prior transform.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from . import angles, bayes, kernels
from .angles import ThetaInterval, containment_check, invert_amplified, quadrant_of
from .bayes import BetaParams, NormalParams
from .kernels import ShotSummary
from .oracle import AmplitudeOracle, ShotLedger

log = logging.getLogger(__name__)

SCHEDULES = ("standard", "hybrid3", "hybrid35")
INTERVAL_KINDS = ("chernoff_hoeffding", "clopper_pearson", "normal_bayes", "beta_bayes")

#: Desk-scale guardrails.
EPSILON_FLOOR = 1e-8
DEFAULT_K_CAP = 10**7


@dataclass(frozen=True)
class EstimatorConfig:
    epsilon: float
    alpha: float = 0.05
    n_incre: int = 10
    schedule: str = "standard"
    interval_kind: str = "chernoff_hoeffding"
    k_cap: int = DEFAULT_K_CAP
    weighting: str = "k_weighted"
    prior_r: int = 1000
    max_shots: int = 10**8
    #: Ablation switch: reseed a fresh noninformative prior at every stage.
    carry_prior: bool = True

    def __post_init__(self):
        if not EPSILON_FLOOR <= self.epsilon < 0.5:
            raise ValueError(f"epsilon={self.epsilon} outside [{EPSILON_FLOOR}, 0.5)")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha={self.alpha} outside (0, 1)")
        if self.n_incre < 1:
            raise ValueError("n_incre must be >= 1")
        if self.schedule not in SCHEDULES:
            raise ValueError(f"unknown schedule {self.schedule!r}")
        if self.interval_kind not in INTERVAL_KINDS:
            raise ValueError(f"unknown interval kind {self.interval_kind!r}")

    @property
    def bayesian(self) -> bool:
        return self.interval_kind in ("normal_bayes", "beta_bayes")


@dataclass(frozen=True)
class StageRecord:
    """Trace of one fixed-K stage of an iterative run."""

    t: int
    K: int
    l: int
    n_shots: int
    theta_interval: ThetaInterval
    posterior: NormalParams | BetaParams | None
    radius: float
    #: Angle radius carried in by the stage prior; inf for a noninformative start.
    prev_radius: float
    alpha_t: float

    @property
    def oracle_calls(self) -> int:
        return self.K * self.n_shots


@dataclass(frozen=True)
class EstimationResult:
    a_lo: float
    a_hi: float
    a_point: float
    theta_interval: ThetaInterval
    ledger: ShotLedger
    stages: tuple[StageRecord, ...]

    @property
    def T(self) -> int:
        return len(self.stages)

    @property
    def radius(self) -> float:
        return 0.5 * (self.a_hi - self.a_lo)


class BudgetExceededError(RuntimeError):
    """The shot guardrail was hit before the target radius; carries the
    partial result."""

    def __init__(self, partial: EstimationResult):
        super().__init__(
            f"budget exceeded at radius {partial.radius:.3e} after "
            f"{partial.ledger.total('shots_only')} shots"
        )
        self.partial = partial


def alpha_allocation(epsilon: float, alpha: float) -> tuple[int, float]:
    """Split the overall level over the amplitude-free stage-count bound.

    Returns (T_max, alpha_t) with T_max = ceil(log3(pi / (4 epsilon))) and
    alpha_t = alpha / T_max, so alpha_t * T_max = alpha exactly.
    """
    t_max = max(1, math.ceil(math.log(math.pi / (4.0 * epsilon), 3)))
    return t_max, alpha / t_max


def find_next_k(interval: ThetaInterval, K_t: int, k_cap: int) -> int:
    """Largest feasible odd factor at least twice K_t, or K_t if none.

    Candidates descend from the largest odd K whose scaled interval can fit
    in one quadrant; feasibility is single-quadrant containment.
    """
    cap = 2 * k_cap + 1
    if interval.width <= 0.0:
        k_max = cap
    else:
        k_max = min(cap, int(angles.HALF_PI / interval.width))
    if k_max % 2 == 0:
        k_max -= 1
    candidate = k_max
    while candidate >= 2 * K_t:
        if containment_check(interval, candidate).feasible:
            return candidate
        candidate -= 2
    return K_t


def classical_qae(
    oracle: AmplitudeOracle,
    n: int,
    alpha: float,
    interval_kind: str = "chernoff_hoeffding",
) -> EstimationResult:
    """Unamplified baseline: one batch of k=0 shots and a binomial interval.

    The point estimate is the sample mean (the interval center before
    truncation at the unit-interval boundary).
    """
    successes = oracle.sample_shots(0, n)
    summary = ShotSummary(n, successes)
    p_int = kernels.frequentist_interval(interval_kind, summary, alpha)
    theta_int = invert_amplified(p_int, 1, 0)
    stage = StageRecord(
        t=0,
        K=1,
        l=0,
        n_shots=n,
        theta_interval=theta_int,
        posterior=None,
        radius=theta_int.radius,
        prev_radius=math.inf,
        alpha_t=alpha,
    )
    return EstimationResult(
        a_lo=p_int.lo,
        a_hi=p_int.hi,
        a_point=summary.mean,
        theta_interval=theta_int,
        ledger=oracle.ledger,
        stages=(stage,),
    )


def aae_estimate(oracle: AmplitudeOracle, k: int, n: int, l: int = 0) -> float:
    """Plug-in amplitude estimate from n shots at fixed depth k and known
    quadrant index l."""
    successes = oracle.sample_shots(k, n)
    mean = successes / n
    return angles.angle_to_amplitude(angles.branch_angle(mean, 2 * k + 1, l))


def _initial_prior(config: EstimatorConfig) -> NormalParams | BetaParams | None:
    if config.interval_kind == "normal_bayes":
        return bayes.NONINFORMATIVE_NORMAL
    if config.interval_kind == "beta_bayes":
        return bayes.NONINFORMATIVE_BETA
    return None


def _stage_interval(config, prior, summary, alpha_t):
    """Probability interval for the amplified success probability and the
    posterior snapshot behind it (None for frequentist kinds)."""
    if config.interval_kind == "normal_bayes":
        posterior = bayes.normal_posterior_update(prior, summary)
        return bayes.credible_interval(posterior, alpha_t), posterior
    if config.interval_kind == "beta_bayes":
        posterior = bayes.beta_posterior_update(prior, summary)
        return bayes.credible_interval(posterior, alpha_t), posterior
    return kernels.frequentist_interval(config.interval_kind, summary, alpha_t), None


def _next_factor(config, theta_int, K) -> int:
    """Next amplification factor per the schedule, or K to stay in stage."""
    cap = 2 * config.k_cap + 1
    if config.schedule == "standard":
        return find_next_k(theta_int, K, config.k_cap)
    if config.schedule == "hybrid3":
        report = containment_check(theta_int, K, bases=(3,))
        if report.slots[3] is not None and 3 * K <= cap:
            return 3 * K
        return K
    report = containment_check(theta_int, K, bases=(3, 5))
    # When both bases qualify, prefer the larger multiplier.
    if report.slots[5] is not None and 5 * K <= cap:
        return 5 * K
    if report.slots[3] is not None and 3 * K <= cap:
        return 3 * K
    return K


def _transform_prior(config, posterior, K, K_next, l, rng):
    """Push the stage posterior to the next stage's prior; fall back to a
    noninformative prior when the transform degenerates."""
    if not config.carry_prior:
        return _initial_prior(config), False
    try:
        if isinstance(posterior, NormalParams):
            return bayes.normal_prior_transform(posterior, K, K_next, l), True
        return (
            bayes.beta_prior_transform(
                posterior, K, K_next, l, rng, sample_count=config.prior_r
            ),
            True,
        )
    except (bayes.SingularTransformError, kernels.DegenerateSampleError) as exc:
        log.debug("prior transform failed at K=%d -> %d (%s); reset prior", K, K_next, exc)
        return _initial_prior(config), False


def iterative_run(
    oracle: AmplitudeOracle,
    config: EstimatorConfig,
    transform_rng: np.random.Generator | None = None,
) -> EstimationResult:
    """Run the iterative estimation loop until the amplitude interval radius
    reaches the target.

    Raises BudgetExceededError (with the partial result attached) if the
    shot guardrail is hit first.
    """
    if transform_rng is None:
        transform_rng = np.random.default_rng(0)
    _, alpha_t = alpha_allocation(config.epsilon, config.alpha)

    K, l, t = 1, 0, 0
    prior = _initial_prior(config)
    prev_radius = math.inf
    stage_n = stage_s = 0
    stages: list[StageRecord] = []

    while True:
        stage_s += oracle.sample_shots((K - 1) // 2, config.n_incre)
        stage_n += config.n_incre
        summary = ShotSummary(stage_n, stage_s)
        p_int, posterior = _stage_interval(config, prior, summary, alpha_t)
        theta_int = invert_amplified(p_int, K, l)
        a_lo = angles.angle_to_amplitude(theta_int.lo)
        a_hi = angles.angle_to_amplitude(theta_int.hi)

        def _result() -> EstimationResult:
            final = StageRecord(
                t, K, l, stage_n, theta_int, posterior,
                theta_int.radius, prev_radius, alpha_t,
            )
            return EstimationResult(
                a_lo=a_lo,
                a_hi=a_hi,
                a_point=0.5 * (a_lo + a_hi),
                theta_interval=theta_int,
                ledger=oracle.ledger,
                stages=tuple(stages) + (final,),
            )

        if 0.5 * (a_hi - a_lo) <= config.epsilon:
            return _result()
        if oracle.ledger.total("shots_only") >= config.max_shots:
            raise BudgetExceededError(_result())

        K_next = _next_factor(config, theta_int, K)
        if K_next > K:
            stages.append(
                StageRecord(
                    t, K, l, stage_n, theta_int, posterior,
                    theta_int.radius, prev_radius, alpha_t,
                )
            )
            l_next = quadrant_of(K_next * theta_int.lo)
            if config.bayesian:
                prior, carried = _transform_prior(
                    config, posterior, K, K_next, l, transform_rng
                )
                prev_radius = theta_int.radius if carried else math.inf
            else:
                prev_radius = theta_int.radius
            K, l, t = K_next, l_next, t + 1
            stage_n = stage_s = 0


def iqae_run(
    oracle: AmplitudeOracle, config: EstimatorConfig
) -> EstimationResult:
    """Frequentist iterative estimation (Chernoff-Hoeffding or
    Clopper-Pearson intervals) on any schedule."""
    if config.bayesian:
        raise ValueError("iqae_run requires a frequentist interval kind")
    return iterative_run(oracle, config)


def biqae_run(
    oracle: AmplitudeOracle,
    config: EstimatorConfig,
    transform_rng: np.random.Generator | None = None,
) -> EstimationResult:
    """Bayesian iterative estimation (normal or beta conjugate family) on
    the standard schedule."""
    if not config.bayesian:
        raise ValueError("biqae_run requires a Bayesian interval kind")
    if config.schedule != "standard":
        config = replace(config, schedule="standard")
    return iterative_run(oracle, config, transform_rng)
