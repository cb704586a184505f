"""Finite-difference oracles on round spheres."""

from .conformal import (
    ConformalPath,
    InadmissibleStep,
    RoundoffDominated,
    conformal_curvature,
    fd_first_derivative,
    fd_second_derivative,
    functional_value,
)
from .identities import ConnectionVariation, IdentityReport, first_variation_identity_checks
from .zonal import QuadratureError, ZonalFunction, sphere_volume, zonal_integral

__all__ = [
    "ConformalPath",
    "ConnectionVariation",
    "IdentityReport",
    "InadmissibleStep",
    "QuadratureError",
    "RoundoffDominated",
    "ZonalFunction",
    "conformal_curvature",
    "fd_first_derivative",
    "fd_second_derivative",
    "first_variation_identity_checks",
    "functional_value",
    "sphere_volume",
    "zonal_integral",
]
