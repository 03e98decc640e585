"""Preferential-attachment graphs with a late changepoint.

Simulation of the affine attachment model, degree censuses, limit-law
constants, maximum-likelihood estimation of the attachment parameter,
changepoint decision rules, and Monte Carlo power experiments.
"""

from .degrees import (
    DegreeCensus,
    census,
    census_from_degrees,
    load_census_csv,
    p_k_value,
    p_m_prime,
    p_m_value,
    p_tail,
    pk_weighted_sum,
    save_census_csv,
)
from .estimator import (
    MleResult,
    ParameterBounds,
    limit_curvature,
    limit_score,
    log_likelihood,
    mle,
    s_norm,
    score,
    score_derivative,
)
from .growth import (
    ExplicitTau,
    FinalGraph,
    GrowthState,
    ModelConfig,
    Scaled,
    attach_distribution_oracle,
    attach_target,
    config_summary,
    delta_at,
    grow,
    grow_reference,
    load_degrees_csv,
    resolve_tau,
    resolve_tau_info,
    save_degrees_csv,
    save_edges_csv,
)
from .hypotests import (
    ShiftConstants,
    TestMode,
    TestReport,
    attach_increase_prob,
    b_cov,
    default_a_n,
    kappa_fn,
    mean_shift_Q,
    mean_shift_T,
    mean_shift_T_rational,
    predicted_power,
    shift_constants,
    sigma_cov,
    statistic_Q,
    statistic_T,
    test_phi,
    test_phi_cal,
    test_psi,
    test_psi_cal,
    u_var,
    v_var,
    w_var,
    z_quantile,
)
from .montecarlo import (
    ExperimentResult,
    ExperimentSpec,
    SizeResult,
    TestPower,
    clopper_pearson,
    empirical_moments,
    load_spec_json,
    qq_data,
    run_experiment,
    write_moments_csv,
    write_power_csv,
    write_qq_csvs,
)
from .rng import SplitMix64, replicate_seed

__version__ = "0.1.0"

__all__ = [
    "DegreeCensus",
    "ExperimentResult",
    "ExperimentSpec",
    "ExplicitTau",
    "FinalGraph",
    "GrowthState",
    "MleResult",
    "ModelConfig",
    "ParameterBounds",
    "Scaled",
    "ShiftConstants",
    "SizeResult",
    "SplitMix64",
    "TestMode",
    "TestPower",
    "TestReport",
    "attach_distribution_oracle",
    "attach_increase_prob",
    "attach_target",
    "b_cov",
    "census",
    "census_from_degrees",
    "clopper_pearson",
    "config_summary",
    "default_a_n",
    "delta_at",
    "empirical_moments",
    "grow",
    "grow_reference",
    "kappa_fn",
    "limit_curvature",
    "limit_score",
    "load_census_csv",
    "load_degrees_csv",
    "load_spec_json",
    "log_likelihood",
    "mean_shift_Q",
    "mean_shift_T",
    "mean_shift_T_rational",
    "mle",
    "p_k_value",
    "p_m_prime",
    "p_m_value",
    "p_tail",
    "pk_weighted_sum",
    "predicted_power",
    "qq_data",
    "replicate_seed",
    "resolve_tau",
    "resolve_tau_info",
    "run_experiment",
    "s_norm",
    "save_census_csv",
    "save_degrees_csv",
    "save_edges_csv",
    "score",
    "score_derivative",
    "shift_constants",
    "sigma_cov",
    "statistic_Q",
    "statistic_T",
    "test_phi",
    "test_phi_cal",
    "test_psi",
    "test_psi_cal",
    "u_var",
    "v_var",
    "w_var",
    "write_moments_csv",
    "write_power_csv",
    "write_qq_csvs",
    "z_quantile",
]
