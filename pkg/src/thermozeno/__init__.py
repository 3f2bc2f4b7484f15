"""Exact thermal dynamics of a three-level system coupled to harmonic oscillators,
with analytic Zeno-type survival bounds."""

__version__ = "0.1.0"

from .errors import (ConfigError, ConvergenceFailure, CutoffOverflow, DimensionOverflow,
                     DomainError, NonPositiveFrequency, ResonanceViolation, ThermoZenoError,
                     ZeroCoupling)
from .model import ModelParams, Tolerances, ValidatedParams, validate

__all__ = [
    "ModelParams", "Tolerances", "ValidatedParams", "validate",
    "ConfigError", "ConvergenceFailure", "CutoffOverflow", "DimensionOverflow",
    "DomainError", "NonPositiveFrequency", "ResonanceViolation", "ThermoZenoError",
    "ZeroCoupling",
]
