"""Stochastic cascade model: solver, synthesis, estimators and oracles."""

from ._core import (
    ConfigError,
    ContractError,
    FormatError,
    InstabilityError,
    Params,
    c_H,
    finite_time_spectrum,
    fgf_statics,
    fit_power_law,
    flatness,
    forward,
    inverse,
    lattice,
    periodogram,
    resolve_config,
    run_cli,
    scaling_exponent,
    simulate,
    skewness,
    stationary_spectrum,
    structure_function,
    synthesize,
    truncation_weight,
    viscous_s_integral,
)

__version__ = "0.1.0"
