"""Shell module for Orbita."""

from orbita.shell.ball import (
    DEFAULT_LAYERS,
    DensityProfile,
    ProfileError,
    ball_mass,
    load_density_profile,
    solid_ball_force,
    uniform_profile,
)
from orbita.shell.quadrature import (
    DEFAULT_MESH_LEVEL,
    ExteriorPointError,
    MeshError,
    NEAR_SURFACE_MARGIN,
    NEAR_SURFACE_MESH_LEVEL,
    QuadratureResult,
    ShellError,
    ShellSpec,
    inversion_point,
    inversion_ratios,
    point_mass_force,
    projected_solid_angle,
    shell_force_adaptive,
    shell_force_quadrature,
)

__all__ = [
    "DEFAULT_LAYERS",
    "DEFAULT_MESH_LEVEL",
    "DensityProfile",
    "ExteriorPointError",
    "MeshError",
    "NEAR_SURFACE_MARGIN",
    "NEAR_SURFACE_MESH_LEVEL",
    "ProfileError",
    "QuadratureResult",
    "ShellError",
    "ShellSpec",
    "ball_mass",
    "inversion_point",
    "inversion_ratios",
    "load_density_profile",
    "point_mass_force",
    "projected_solid_angle",
    "shell_force_adaptive",
    "shell_force_quadrature",
    "solid_ball_force",
    "uniform_profile",
]
