"""
Dynamics module for Orbita.

Central force fields, the trajectory integrator used as numerical oracle,
area-law and acceleration diagnostics, and the two-body reduction.
"""

from orbita.dynamics.diagnostics import (
    area_law_drift,
    areal_velocity,
    areal_velocity_series,
    binet_force,
    binet_residual,
    first_derivative,
    polar_decompose_accel,
    second_derivative,
    specific_energy,
    trajectory_accelerations,
)
from orbita.dynamics.fields import (
    CentralField,
    CollisionError,
    DynamicsError,
    Field,
    IntegrationError,
    PerturbedField,
    StencilError,
    StepLimitError,
    accelerate,
)
from orbita.dynamics.integrator import (
    IntegratorStats,
    State2D,
    Trajectory,
    integrate,
)
from orbita.dynamics.sampling import kepler_samples
from orbita.dynamics.two_body import (
    TwoBodyState,
    barycenter_drift,
    barycenter_path,
    barycentric_fields,
    barycentric_trajectory,
    initial_relative_state,
    mutual_force,
    relative_field,
    relative_trajectory,
    total_angular_momentum,
    total_momentum,
    two_body_integrate,
)

__all__ = [
    "CentralField",
    "CollisionError",
    "DynamicsError",
    "Field",
    "IntegrationError",
    "IntegratorStats",
    "PerturbedField",
    "State2D",
    "StencilError",
    "StepLimitError",
    "Trajectory",
    "TwoBodyState",
    "accelerate",
    "area_law_drift",
    "areal_velocity",
    "areal_velocity_series",
    "barycenter_drift",
    "barycenter_path",
    "barycentric_fields",
    "barycentric_trajectory",
    "binet_force",
    "binet_residual",
    "first_derivative",
    "initial_relative_state",
    "integrate",
    "kepler_samples",
    "mutual_force",
    "polar_decompose_accel",
    "relative_field",
    "relative_trajectory",
    "second_derivative",
    "specific_energy",
    "total_angular_momentum",
    "total_momentum",
    "trajectory_accelerations",
    "two_body_integrate",
]
