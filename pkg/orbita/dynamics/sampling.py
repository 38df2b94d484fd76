"""
Exact Keplerian samples for Orbita.

Time along a Kepler ellipse is obtained from the area law alone: the focal
angle obeys the scalar ODE dtheta/dt = k / r(theta)^2 with k = 2 pi a b / T and
r(theta) from the focal polar equation. No Kepler equation is involved.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from orbita.core.config import SimConfig
from orbita.dynamics.fields import IntegrationError
from orbita.geometry import EllipseGeom

logger = logging.getLogger("orbita.dynamics")


def kepler_samples(
    ell: EllipseGeom,
    T: float,
    times: np.ndarray,
    theta0: float = 0.0,
    cfg: Optional[SimConfig] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Focal angles and F1-centered positions of a Kepler ellipse at given times.

    The frame has F1 at the origin and the x-axis pointing toward F2; motion
    is counter-clockwise and starts at focal angle ``theta0`` at time 0.

    Args:
        ell: Orbit ellipse
        T: Orbital period
        times: Non-decreasing sample times, all >= 0
        theta0: Focal angle at t = 0
        cfg: Tolerances for the angle ODE

    Returns:
        (theta at each time, positions with shape (N, 2))
    """
    cfg = cfg or SimConfig()
    times = np.asarray(times, dtype=float)
    if T <= 0.0:
        raise IntegrationError(f"Period must be positive, got {T}")
    k = 2.0 * math.pi * ell.a * ell.b / T
    b_sq = ell.b * ell.b

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        r = b_sq / (ell.a - ell.c * math.cos(y[0]))
        return np.array([k / (r * r)])

    t_end = float(times.max()) if times.size else 0.0
    if t_end <= 0.0:
        theta = np.full(times.shape, theta0)
    else:
        # scipy warns below 100 eps; the angle ODE does not need more
        rtol = max(cfg.rel_tol, 1e-13)
        sol = solve_ivp(
            rhs, (0.0, t_end), [theta0], method=cfg.method,
            rtol=rtol, atol=cfg.abs_tol, dense_output=True,
        )
        if not sol.success:
            logger.error(f"Angle ODE failed: {sol.message}")
            raise IntegrationError(f"Angle ODE failed: {sol.message}")
        theta = sol.sol(times)[0]

    r = b_sq / (ell.a - ell.c * np.cos(theta))
    positions = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
    return theta, positions
