"""Geometry module for Orbita."""

from orbita.geometry.conic import (
    DEFAULT_ECCENTRICITY_TOL,
    ConicOrbit,
    ConicType,
    conic_classify,
    conic_from_ellipse,
    conic_from_signed,
    conic_to_ellipse,
    conic_to_geom_angle,
    geom_to_conic_angle,
    normalize_angle,
)
from orbita.geometry.ellipse import (
    DomainError,
    EllipseGeom,
    GeometryError,
    TangentData,
    curvature_parametric,
    ellipse_from_axes,
    focal_angles,
    focal_to_param_angle,
    make_ellipse,
    param_to_focal_angle,
    point_and_focal_distances,
    point_at,
    radius_at,
    tangent_data,
    tangent_direction,
    tangent_parallel_point,
)

__all__ = [
    "DEFAULT_ECCENTRICITY_TOL",
    "ConicOrbit",
    "ConicType",
    "DomainError",
    "EllipseGeom",
    "GeometryError",
    "TangentData",
    "conic_classify",
    "conic_from_ellipse",
    "conic_from_signed",
    "conic_to_ellipse",
    "conic_to_geom_angle",
    "curvature_parametric",
    "ellipse_from_axes",
    "focal_angles",
    "focal_to_param_angle",
    "geom_to_conic_angle",
    "make_ellipse",
    "normalize_angle",
    "param_to_focal_angle",
    "point_and_focal_distances",
    "point_at",
    "radius_at",
    "tangent_data",
    "tangent_direction",
    "tangent_parallel_point",
]
