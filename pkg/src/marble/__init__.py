"""Lamb-Oseen vortex marbling: closed-form displacement, quadrature oracle,
backward-mapping renderer, recipe language and bath hydrodynamics."""

from .vortexmath import (
    NORM_EXPONENT,
    DomainError,
    VortexParams,
    angle,
    circumferential_velocity,
    displacement,
    displacement_rate,
    lp_norm,
)

__version__ = "0.1.0"

__all__ = [
    "NORM_EXPONENT",
    "DomainError",
    "VortexParams",
    "angle",
    "circumferential_velocity",
    "displacement",
    "displacement_rate",
    "lp_norm",
]
