"""
Force-law inference for Orbita.

Given motion on a Kepler ellipse obeying the area law, recover the
acceleration three independent ways and fit the power law:

    - hodograph: differentiate the closed-form velocity v(theta) along the orbit
    - curvature: |a| = |v|^2 kappa / sin(epsilon) with |v| from the area law
    - binet: |a| = k^2 q^2 (q'' + q) with q = 1/r from the focal polar equation

All three land on |a| = (4 pi^2 a^3 / T^2) / r^2.

Frame: F1 at the origin, theta = 0 pointing from F1 toward F2, so the
velocity at theta = 0 is vertical.
"""

import logging
import math
from enum import Enum
from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from orbita.dynamics import binet_force
from orbita.geometry import (
    EllipseGeom,
    focal_to_param_angle,
    radius_at,
    tangent_data,
)

logger = logging.getLogger("orbita.inference")

DEFAULT_FIT_SAMPLES = 64


class InferenceError(Exception):
    """Exception raised for force-law inference errors."""
    pass


class DegenerateFitError(InferenceError):
    """Exception raised when samples cannot determine a power law."""
    pass


class EstimateMethod(str, Enum):
    """Route by which acceleration samples were obtained."""
    HODOGRAPH = "hodograph"
    CURVATURE = "curvature"
    BINET = "binet"
    TRAJECTORY = "trajectory"
    ORBIT = "orbit"


class KeplerMotionSpec(BaseModel):
    """
    Keplerian motion: an ellipse traversed under the area law.

    Attributes:
        ell: Orbit ellipse with the attracting focus F1
        T: Orbital period
        sense: +1 counter-clockwise, -1 clockwise
    """

    model_config = ConfigDict(frozen=True)

    ell: EllipseGeom
    T: float
    sense: int = 1

    @field_validator("T")
    @classmethod
    def _positive_period(cls, value: float) -> float:
        if not value > 0.0:
            raise InferenceError(f"Period must be positive, got {value}")
        return value

    @field_validator("sense")
    @classmethod
    def _valid_sense(cls, value: int) -> int:
        if value not in (1, -1):
            raise InferenceError(f"Sense must be +1 or -1, got {value}")
        return value

    @property
    def k(self) -> float:
        """Areal constant 2 pi a b / T (twice the areal velocity)."""
        return 2.0 * math.pi * self.ell.a * self.ell.b / self.T

    @property
    def coefficient(self) -> float:
        """Inverse-square coefficient 4 pi^2 a^3 / T^2."""
        return 4.0 * math.pi ** 2 * self.ell.a ** 3 / self.T ** 2


class ForceLawFit(BaseModel):
    """Result of a log-log power-law fit |a| = coefficient * r^exponent."""

    exponent: float
    coefficient: float
    residual_norm: float


class ForceEstimate(BaseModel):
    """
    Acceleration samples with their fitted power law.

    Attributes:
        r: Radii of the samples
        accel: Acceleration magnitudes
        fitted_exponent: Fitted power-law exponent
        fitted_coefficient: Fitted power-law coefficient
        residual_norm: Norm of the log-space fit residuals
        method: How the samples were obtained
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    r: np.ndarray
    accel: np.ndarray
    fitted_exponent: float
    fitted_coefficient: float
    residual_norm: float
    method: EstimateMethod


def rotate(vector, angle: float) -> np.ndarray:
    """Rotate a 2-vector counter-clockwise by ``angle``."""
    c, s = math.cos(angle), math.sin(angle)
    v = np.asarray(vector, dtype=float)
    return np.array([c * v[0] - s * v[1], s * v[0] + c * v[1]])


def _hodograph_scales(spec: KeplerMotionSpec) -> Tuple[float, float]:
    ell, T = spec.ell, spec.T
    radius = 2.0 * math.pi * ell.a ** 2 / (ell.b * T)
    offset = -2.0 * math.pi * ell.a * ell.c / (ell.b * T)
    return radius, offset


def hodograph_circle(spec: KeplerMotionSpec) -> Tuple[np.ndarray, float]:
    """
    Circle traced by the velocity vector.

    Returns:
        (center, radius); center (0, -2 pi a c / (b T)), radius 2 pi a^2 / (b T)
    """
    radius, offset = _hodograph_scales(spec)
    return np.array([0.0, spec.sense * offset]), radius


def velocity_hodograph(spec: KeplerMotionSpec, theta: float) -> np.ndarray:
    """
    Closed-form velocity at focal angle theta:
    v = (pi a / (b T)) (0, -2c) + (2 pi a^2 / (b T)) (-sin theta, cos theta).
    """
    radius, offset = _hodograph_scales(spec)
    v = np.array([-radius * math.sin(theta), offset + radius * math.cos(theta)])
    return spec.sense * v


def accel_via_hodograph(spec: KeplerMotionSpec, theta: float) -> np.ndarray:
    """
    Acceleration vector dv/dt = (dv/dtheta) (dtheta/dt) with dtheta/dt = k / r^2.

    The result points from P toward F1 with magnitude (4 pi^2 a^3 / T^2) / r^2.
    """
    radius, _ = _hodograph_scales(spec)
    dv_dtheta = spec.sense * radius * np.array([-math.cos(theta), -math.sin(theta)])
    r = radius_at(spec.ell, theta)
    theta_dot = spec.sense * spec.k / (r * r)
    return dv_dtheta * theta_dot


def accel_via_curvature(spec: KeplerMotionSpec, theta: float) -> float:
    """
    Acceleration magnitude from curvature kinematics.

    The area law r |v| sin(epsilon) = k gives the speed, the focal curvature
    formula gives kappa, and the normal component |v|^2 kappa equals
    |a| sin(epsilon) because the acceleration points at F1.
    """
    t = focal_to_param_angle(spec.ell, theta)
    data = tangent_data(spec.ell, t)
    sin_eps = math.sin(data.epsilon)
    r = radius_at(spec.ell, theta)
    speed = spec.k / (r * sin_eps)
    return speed * speed * data.kappa / sin_eps


def binet_curvature_term(ell: EllipseGeom, theta: float) -> float:
    """
    q'' + q for q = (a - c cos theta) / b^2; identically a / b^2.
    """
    b_sq = ell.b * ell.b
    q = (ell.a - ell.c * math.cos(theta)) / b_sq
    q_ddot = ell.c * math.cos(theta) / b_sq
    return q_ddot + q


def accel_via_binet(spec: KeplerMotionSpec, theta: float) -> float:
    """
    Acceleration magnitude through the Binet equation, k^2 q^2 (q'' + q).
    Equals (k^2 a / b^2) / r^2 = (4 pi^2 a^3 / T^2) / r^2.
    """
    r = radius_at(spec.ell, theta)
    q = 1.0 / r
    return spec.k ** 2 * q * q * binet_curvature_term(spec.ell, theta)


def fit_force_law(samples) -> ForceLawFit:
    """
    Least-squares fit of log|a| = log(coefficient) + exponent * log(r).

    Args:
        samples: Sequence of (r, |a|) pairs, at least 3, all positive

    Returns:
        The fitted exponent, coefficient and residual norm

    Raises:
        InferenceError: If there are too few samples or non-positive values
        DegenerateFitError: If all radii coincide
    """
    data = np.asarray(samples, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise InferenceError(f"Samples must be (r, |a|) pairs, got shape {data.shape}")
    if data.shape[0] < 3:
        raise InferenceError(f"Need at least 3 samples for a fit, got {data.shape[0]}")
    if np.any(data <= 0.0) or not np.all(np.isfinite(data)):
        raise InferenceError("Fit samples must be positive and finite")

    log_r = np.log(data[:, 0])
    log_a = np.log(data[:, 1])
    spread = float(np.ptp(log_r))
    if spread <= 1e-12:
        logger.warning("All samples share one radius; the exponent is undetermined")
        raise DegenerateFitError("All samples have the same radius; cannot fit an exponent")

    design = np.column_stack([np.ones_like(log_r), log_r])
    (intercept, exponent), *_ = np.linalg.lstsq(design, log_a, rcond=None)
    residual = log_a - design @ np.array([intercept, exponent])
    return ForceLawFit(
        exponent=float(exponent),
        coefficient=float(math.exp(intercept)),
        residual_norm=float(np.linalg.norm(residual)),
    )


def _estimate(r: np.ndarray, accel: np.ndarray, method: EstimateMethod) -> ForceEstimate:
    fit = fit_force_law(np.column_stack([r, accel]))
    logger.debug(f"{method.value} fit: exponent={fit.exponent:.12f}, coefficient={fit.coefficient:.12g}")
    return ForceEstimate(
        r=r,
        accel=accel,
        fitted_exponent=fit.exponent,
        fitted_coefficient=fit.coefficient,
        residual_norm=fit.residual_norm,
        method=method,
    )


def sample_thetas(n_samples: int = DEFAULT_FIT_SAMPLES) -> np.ndarray:
    """Uniform focal angles on [0, 2 pi)."""
    return np.linspace(0.0, 2.0 * math.pi, n_samples, endpoint=False)


def sample_force(
    spec: KeplerMotionSpec,
    method: EstimateMethod = EstimateMethod.HODOGRAPH,
    n_samples: int = DEFAULT_FIT_SAMPLES,
) -> ForceEstimate:
    """
    Sample |a| on a uniform theta grid with one closed-form route and fit it.

    Raises:
        DegenerateFitError: For a circle, whose samples share one radius
    """
    thetas = sample_thetas(n_samples)
    r = np.array([radius_at(spec.ell, th) for th in thetas])
    if method == EstimateMethod.HODOGRAPH:
        accel = np.array([np.hypot(*accel_via_hodograph(spec, th)) for th in thetas])
    elif method == EstimateMethod.CURVATURE:
        accel = np.array([accel_via_curvature(spec, th) for th in thetas])
    elif method == EstimateMethod.BINET:
        accel = np.array([accel_via_binet(spec, th) for th in thetas])
    else:
        raise InferenceError(f"Method {method.value} has no closed form to sample")
    return _estimate(r, accel, method)


def estimate_from_samples(r: Sequence[float], accel: Sequence[float], method: EstimateMethod) -> ForceEstimate:
    """Fit a power law to externally produced (r, |a|) samples."""
    return _estimate(np.asarray(r, dtype=float), np.asarray(accel, dtype=float), method)


def force_from_orbit(theta: np.ndarray, q: np.ndarray, k: float, mass: float = 1.0) -> ForceEstimate:
    """
    Direct problem: the central force implied by a sampled orbit q(theta) = 1/r.

    The Binet equation gives F = -m k^2 q^2 (q'' + q) at the interior samples;
    the attraction magnitude |F| is then fitted to a power law.

    Args:
        theta: Uniform angle grid
        q: Orbit samples 1/r
        k: Twice the areal velocity
        mass: Mass of the moving body
    """
    r, force = binet_force(np.asarray(q, dtype=float), np.asarray(theta, dtype=float), k, mass)
    if np.any(force >= 0.0):
        raise InferenceError("Orbit implies a repulsive force somewhere; power-law fit needs attraction")
    return _estimate(r, -force, EstimateMethod.ORBIT)


def circle_through_center(radius: float, theta: np.ndarray) -> np.ndarray:
    """q = 1/r of a circle of the given radius passing through the center, |theta| < pi/2."""
    return 1.0 / (2.0 * radius * np.cos(np.asarray(theta, dtype=float)))


def kepler_orbit_q(ell: EllipseGeom, theta: np.ndarray) -> np.ndarray:
    """q = 1/r = (a - c cos theta) / b^2 on the focal angle grid."""
    return (ell.a - ell.c * np.cos(np.asarray(theta, dtype=float))) / (ell.b * ell.b)
