"""Inference module for Orbita."""

from orbita.inference.force_law import (
    DEFAULT_FIT_SAMPLES,
    DegenerateFitError,
    EstimateMethod,
    ForceEstimate,
    ForceLawFit,
    InferenceError,
    KeplerMotionSpec,
    accel_via_binet,
    accel_via_curvature,
    accel_via_hodograph,
    binet_curvature_term,
    circle_through_center,
    estimate_from_samples,
    fit_force_law,
    force_from_orbit,
    hodograph_circle,
    kepler_orbit_q,
    rotate,
    sample_force,
    sample_thetas,
    velocity_hodograph,
)

__all__ = [
    "DEFAULT_FIT_SAMPLES",
    "DegenerateFitError",
    "EstimateMethod",
    "ForceEstimate",
    "ForceLawFit",
    "InferenceError",
    "KeplerMotionSpec",
    "accel_via_binet",
    "accel_via_curvature",
    "accel_via_hodograph",
    "binet_curvature_term",
    "circle_through_center",
    "estimate_from_samples",
    "fit_force_law",
    "force_from_orbit",
    "hodograph_circle",
    "kepler_orbit_q",
    "rotate",
    "sample_force",
    "sample_thetas",
    "velocity_hodograph",
]
