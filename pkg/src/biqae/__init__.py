"""Iterative and Bayesian-iterative amplitude estimation simulators with a
sample-complexity benchmark harness."""

from .angles import (
    ContainmentReport,
    DomainError,
    ProbInterval,
    ThetaInterval,
    amplified_probability,
    amplitude_to_angle,
    angle_to_amplitude,
    branch_angle,
    containment_check,
    invert_amplified,
    quadrant_index,
)
from .bayes import (
    BetaParams,
    NormalParams,
    SingularTransformError,
    beta_posterior_update,
    beta_prior_transform,
    credible_interval,
    normal_posterior_update,
    normal_prior_transform,
)
from .estimators import (
    BudgetExceededError,
    EstimationResult,
    EstimatorConfig,
    StageRecord,
    aae_estimate,
    alpha_allocation,
    biqae_run,
    classical_qae,
    find_next_k,
    iqae_run,
    iterative_run,
)
from .harness import (
    CellSummary,
    ExperimentPlan,
    ExperimentRecord,
    ObservableEstimate,
    ObservableTerm,
    ScalingFit,
    estimate_observable,
    export_records,
    fit_scaling,
    import_records,
    run_experiment,
    summarize,
)
from .kernels import (
    DegenerateSampleError,
    ShotSummary,
    beta_inv_cdf,
    beta_mle_fit,
    chernoff_hoeffding_interval,
    clopper_pearson_interval,
    frequentist_interval,
    normal_quantile,
)
from .oracle import AmplitudeOracle, LedgerEntry, ShotLedger

__all__ = [
    "AmplitudeOracle",
    "BetaParams",
    "BudgetExceededError",
    "CellSummary",
    "ContainmentReport",
    "DegenerateSampleError",
    "DomainError",
    "EstimationResult",
    "EstimatorConfig",
    "ExperimentPlan",
    "ExperimentRecord",
    "LedgerEntry",
    "NormalParams",
    "ObservableEstimate",
    "ObservableTerm",
    "ProbInterval",
    "ScalingFit",
    "ShotLedger",
    "ShotSummary",
    "SingularTransformError",
    "StageRecord",
    "ThetaInterval",
    "aae_estimate",
    "alpha_allocation",
    "amplified_probability",
    "amplitude_to_angle",
    "angle_to_amplitude",
    "beta_inv_cdf",
    "beta_mle_fit",
    "beta_posterior_update",
    "beta_prior_transform",
    "biqae_run",
    "branch_angle",
    "chernoff_hoeffding_interval",
    "classical_qae",
    "clopper_pearson_interval",
    "containment_check",
    "credible_interval",
    "estimate_observable",
    "export_records",
    "find_next_k",
    "fit_scaling",
    "frequentist_interval",
    "import_records",
    "invert_amplified",
    "iqae_run",
    "iterative_run",
    "normal_posterior_update",
    "normal_prior_transform",
    "normal_quantile",
    "quadrant_index",
    "run_experiment",
    "summarize",
]

__version__ = "0.1.0"
