"""
Trajectory diagnostics for Orbita.

Area-law bookkeeping, the polar decomposition of the acceleration, the Binet
residual of a sampled orbit, and finite-difference accelerations. All
derivatives use 5-point central stencils on uniformly spaced samples.
"""

import logging
from typing import Tuple

import numpy as np

from orbita.dynamics.fields import CentralField, StencilError
from orbita.dynamics.integrator import State2D, Trajectory

logger = logging.getLogger("orbita.dynamics")

STENCIL_HALF_WIDTH = 2


def first_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """5-point central first derivative at interior points (drops 2 at each end)."""
    v = np.asarray(values, dtype=float)
    if v.shape[0] < 2 * STENCIL_HALF_WIDTH + 1:
        raise StencilError(f"Need at least 5 samples for the stencil, got {v.shape[0]}")
    return (v[:-4] - 8.0 * v[1:-3] + 8.0 * v[3:-1] - v[4:]) / (12.0 * h)


def second_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """5-point central second derivative at interior points (drops 2 at each end)."""
    v = np.asarray(values, dtype=float)
    if v.shape[0] < 2 * STENCIL_HALF_WIDTH + 1:
        raise StencilError(f"Need at least 5 samples for the stencil, got {v.shape[0]}")
    return (-v[:-4] + 16.0 * v[1:-3] - 30.0 * v[2:-2] + 16.0 * v[3:-1] - v[4:]) / (12.0 * h * h)


def _uniform_spacing(grid: np.ndarray, name: str) -> float:
    steps = np.diff(np.asarray(grid, dtype=float))
    if steps.size == 0 or np.any(steps <= 0.0):
        raise StencilError(f"{name} grid must be strictly increasing")
    h = float(steps.mean())
    if np.max(np.abs(steps - h)) > 1e-9 * abs(h):
        raise StencilError(f"{name} grid must be uniformly spaced")
    return h


def areal_velocity(s: State2D) -> float:
    """
    Rate at which the focal radius sweeps area, dA/dt = (x vy - y vx) / 2.

    Twice this value is the specific angular momentum k = r^2 dtheta/dt.
    """
    return 0.5 * s.angular_momentum


def areal_velocity_series(traj: Trajectory) -> np.ndarray:
    """dA/dt at every sample of a trajectory."""
    return 0.5 * traj.angular_momentum


def area_law_drift(traj: Trajectory) -> float:
    """Largest relative deviation of k(t) from k(0) along a trajectory."""
    k = traj.angular_momentum
    if k[0] == 0.0:
        return float(np.max(np.abs(k)))
    return float(np.max(np.abs(k - k[0])) / abs(k[0]))


def specific_energy(field: CentralField, s: State2D) -> float:
    """Kinetic plus potential energy per unit mass."""
    v = s.velocity
    return 0.5 * float(np.dot(v, v)) + field.potential(s.radius)


def polar_decompose_accel(traj: Trajectory, index: int) -> Tuple[float, float]:
    """
    Radial and transverse acceleration at a sample, from finite differences
    of r(t) and theta(t).

    radial = r'' - r theta'^2, transverse = 2 r' theta' + r theta''.
    The transverse part vanishes for every central field.

    Args:
        traj: Uniformly sampled trajectory
        index: Sample index with two samples on either side

    Returns:
        (radial, transverse)

    Raises:
        StencilError: If the stencil does not fit around ``index``
    """
    n = len(traj)
    if not (STENCIL_HALF_WIDTH <= index < n - STENCIL_HALF_WIDTH):
        raise StencilError(f"Index {index} has no 5-point stencil in a trajectory of {n} samples")
    h = traj.dt
    window = slice(index - 2, index + 3)
    r = traj.radius[window]
    theta = np.unwrap(np.arctan2(traj.pos[window, 1], traj.pos[window, 0]))

    r_dot = first_derivative(r, h)[0]
    r_ddot = second_derivative(r, h)[0]
    theta_dot = first_derivative(theta, h)[0]
    theta_ddot = second_derivative(theta, h)[0]
    r_mid = r[2]

    radial = r_ddot - r_mid * theta_dot ** 2
    transverse = 2.0 * r_dot * theta_dot + r_mid * theta_ddot
    return float(radial), float(transverse)


def trajectory_accelerations(traj: Trajectory) -> Tuple[np.ndarray, np.ndarray]:
    """
    Acceleration magnitudes from finite differences of the sampled positions.

    Returns:
        (r, |a|) at interior samples (two dropped at each end)
    """
    h = traj.dt
    ax = second_derivative(traj.pos[:, 0], h)
    ay = second_derivative(traj.pos[:, 1], h)
    return traj.radius[2:-2], np.hypot(ax, ay)


def binet_residual(
    q: np.ndarray,
    theta: np.ndarray,
    k: float,
    field: CentralField,
    mass: float = 1.0,
) -> np.ndarray:
    """
    Residual of the Binet equation F(1/q) = -m k^2 q^2 (q'' + q) on a sampled orbit.

    Args:
        q: Samples of q = 1/r
        theta: Uniform angle grid of the samples
        k: Twice the areal velocity
        field: Central field providing F
        mass: Mass of the moving body

    Returns:
        F(1/q) + m k^2 q^2 (q'' + q) at the interior samples

    Raises:
        StencilError: If fewer than 5 samples or a non-uniform grid is given
    """
    q = np.asarray(q, dtype=float)
    if q.shape != np.shape(theta):
        raise StencilError("q and theta must have the same shape")
    h = _uniform_spacing(theta, "theta")
    q_ddot = second_derivative(q, h)
    q_mid = q[2:-2]
    force = field.radial_force(1.0 / q_mid, mass)
    return force + mass * k * k * q_mid ** 2 * (q_ddot + q_mid)


def binet_force(q: np.ndarray, theta: np.ndarray, k: float, mass: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """
    Radial force implied by a sampled orbit through the Binet equation.

    Returns:
        (r, F) at the interior samples, F = -m k^2 q^2 (q'' + q)
    """
    q = np.asarray(q, dtype=float)
    h = _uniform_spacing(theta, "theta")
    q_ddot = second_derivative(q, h)
    q_mid = q[2:-2]
    return 1.0 / q_mid, -mass * k * k * q_mid ** 2 * (q_ddot + q_mid)
