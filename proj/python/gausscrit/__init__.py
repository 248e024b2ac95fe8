"""Quantumness criteria for Gaussian two-mode squeezed states."""

from ._gausscrit import (
    AsymmetryError,
    AxesParams,
    CriteriaReport,
    IoError,
    NonConvergenceError,
    StateParams,
    ValidationError,
    axes_to_params,
    bell_expectation,
    correlator_xx,
    correlator_zz,
    covariance_factorized,
    covariance_homogeneous,
    covariance_two_mode,
    discord,
    discord_asymptotic,
    entropy_f,
    entropy_g,
    evaluate,
    is_physical_covariance,
    is_separable_closed,
    is_separable_theta,
    params_to_axes,
    partition_transform,
    purity_of,
    quad_correlator_xx,
    run_cli,
    scan_csv,
    simon_separability,
    wigner_normalization,
    zz_from_wigner,
)

__all__ = [name for name in dir() if not name.startswith("_")]
