"""Ziv-Zakai lower bounds for multiparameter quantum phase estimation."""

from .fockcore import (
    DomainError,
    EnergySpectrum,
    FockState,
    GeneratorStats,
    SpeedLimitConstants,
    fidelity_from_spectrum,
    generator_stats_from_spectrum,
    mode_number_spectrum,
    optimal_lambda,
)
from .zzb import (
    BoundReport,
    PriorWindow,
    QuadratureConfig,
    combined_bound,
    qzzb_mode_bound,
    qzzb_vector_bound,
    valley_fill,
    zzb_variant2_mode_bound,
)

__all__ = [
    "BoundReport",
    "DomainError",
    "EnergySpectrum",
    "FockState",
    "GeneratorStats",
    "PriorWindow",
    "QuadratureConfig",
    "SpeedLimitConstants",
    "combined_bound",
    "fidelity_from_spectrum",
    "generator_stats_from_spectrum",
    "mode_number_spectrum",
    "optimal_lambda",
    "qzzb_mode_bound",
    "qzzb_vector_bound",
    "valley_fill",
    "zzb_variant2_mode_bound",
]
