"""Invariant-operator analysis of time-dependent generalized oscillators."""

from ._core import (
    BogoliubovPair,
    Coefficients,
    CoefficientProfile,
    CoefficientSample,
    ConfigError,
    ConsistencyError,
    ConstructionError,
    CorrelatorSet,
    DivergenceError,
    DomainError,
    InitializationError,
    ModeState,
    ModeTrajectory,
    ReferenceParams,
    ScenarioConfig,
    SqueezeTriple,
    analytic_mode,
    bogoliubov_coeffs,
    correlators,
    fock_correlators,
    fock_mean_occupation,
    integrate,
    reconstruct,
    run,
    squeeze_params,
    sweep,
    uncertainty_product,
    unitarity_residual,
    vacuum_init,
    verify,
    wronskian,
    wronskian_residual,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
