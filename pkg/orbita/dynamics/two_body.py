"""
Two-body integration for Orbita.

Both bodies are integrated under their mutual inverse-square attraction.
The center of mass then moves uniformly and the separation vector obeys a
one-body inverse-square field of strength G (m1 + m2); each body moves about
the barycenter in a field of strength G m_other^3 / (m1 + m2)^2.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from orbita.core.config import SimConfig
from orbita.dynamics.fields import CentralField, CollisionError, DynamicsError
from orbita.dynamics.integrator import State2D, Trajectory, collision_guard, run_adaptive, run_fixed

logger = logging.getLogger("orbita.dynamics")


class TwoBodyState(BaseModel):
    """
    Two point masses under mutual gravitation.

    Attributes:
        mass1: Mass of the first body
        mass2: Mass of the second body
        state1: State of the first body
        state2: State of the second body
        G: Gravitational constant
    """

    model_config = ConfigDict(frozen=True)

    mass1: float
    mass2: float
    state1: State2D
    state2: State2D
    G: float = 1.0

    @model_validator(mode="after")
    def _check_invariants(self) -> "TwoBodyState":
        if not (self.mass1 > 0.0 and self.mass2 > 0.0):
            raise DynamicsError(f"Masses must be positive, got {self.mass1}, {self.mass2}")
        if not self.G > 0.0:
            raise DynamicsError(f"Gravitational constant must be positive, got {self.G}")
        if self.state1.pos == self.state2.pos:
            raise CollisionError("The two bodies start at the same position")
        return self

    @property
    def total_mass(self) -> float:
        return self.mass1 + self.mass2

    @property
    def separation(self) -> float:
        return math.hypot(
            self.state2.pos[0] - self.state1.pos[0],
            self.state2.pos[1] - self.state1.pos[1],
        )


def mutual_force(G: float, m1: float, m2: float, r: float) -> float:
    """Magnitude of the mutual attraction G m1 m2 / r^2 between two point masses."""
    if not r > 0.0:
        raise DynamicsError(f"Separation must be positive, got {r}")
    return G * m1 * m2 / (r * r)


def relative_field(tb: TwoBodyState) -> CentralField:
    """One-body field governing the separation vector r2 - r1."""
    return CentralField(C=tb.G * tb.total_mass, n=-2.0)


def barycentric_fields(tb: TwoBodyState) -> Tuple[CentralField, CentralField]:
    """One-body fields governing each body's motion about the barycenter."""
    m_sq = tb.total_mass ** 2
    return (
        CentralField(C=tb.G * tb.mass2 ** 3 / m_sq, n=-2.0),
        CentralField(C=tb.G * tb.mass1 ** 3 / m_sq, n=-2.0),
    )


def two_body_integrate(
    tb: TwoBodyState,
    duration: float,
    cfg: Optional[SimConfig] = None,
) -> Tuple[Trajectory, Trajectory]:
    """
    Integrate both bodies under their mutual attraction.

    Args:
        tb: Initial two-body state
        duration: Integration time span, > 0
        cfg: Integrator settings

    Returns:
        (trajectory of body 1, trajectory of body 2) on a common time grid;
        each carries the field governing its motion about the barycenter

    Raises:
        CollisionError: If the separation drops below r_min
        StepLimitError: If the step budget is exhausted
    """
    cfg = cfg or SimConfig()
    if not duration > 0.0:
        raise DynamicsError(f"Duration must be positive, got {duration}")

    g, m1, m2 = tb.G, tb.mass1, tb.mass2

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        rel = y[2:4] - y[0:2]
        d = math.hypot(rel[0], rel[1])
        if d == 0.0:
            raise CollisionError("Bodies collided")
        scale = g / (d * d * d)
        a1 = scale * m2 * rel
        a2 = -scale * m1 * rel
        return np.array([y[4], y[5], y[6], y[7], a1[0], a1[1], a2[0], a2[1]])

    # State layout: x1, y1, x2, y2, vx1, vy1, vx2, vy2
    y0 = np.array([*tb.state1.pos, *tb.state2.pos, *tb.state1.vel, *tb.state2.vel], dtype=float)
    r_min = cfg.r_min_factor * tb.separation
    separation_guard = collision_guard(r_min)

    def guard(y_old: np.ndarray, y_new: np.ndarray):
        return separation_guard(y_old[2:4] - y_old[0:2], y_new[2:4] - y_new[0:2])

    t0 = tb.state1.t
    logger.debug(f"Integrating two-body system for {duration} time units")
    dense = None
    if cfg.integrator == "adaptive":
        t, y, dense, stats = run_adaptive(rhs, y0, t0, duration, cfg, guard)
    else:
        t, y, stats = run_fixed(rhs, y0, t0, duration, cfg, guard)

    field1, field2 = barycentric_fields(tb)
    traj1 = Trajectory(
        t=t, pos=y[:, 0:2], vel=y[:, 4:6], field=field1, stats=stats, dense=dense, dense_index=(0, 1, 4, 5)
    )
    traj2 = Trajectory(
        t=t, pos=y[:, 2:4], vel=y[:, 6:8], field=field2, stats=stats, dense=dense, dense_index=(2, 3, 6, 7)
    )
    logger.debug(f"Two-body integration done in {stats.n_steps} steps")
    return traj1, traj2


def barycenter_path(tb: TwoBodyState, traj1: Trajectory, traj2: Trajectory) -> np.ndarray:
    """Center-of-mass positions along a two-body run, shape (N, 2)."""
    return (tb.mass1 * traj1.pos + tb.mass2 * traj2.pos) / tb.total_mass


def barycenter_drift(tb: TwoBodyState, traj1: Trajectory, traj2: Trajectory) -> float:
    """Largest deviation of the center of mass from uniform straight-line motion."""
    path = barycenter_path(tb, traj1, traj2)
    v_cm = (tb.mass1 * traj1.vel[0] + tb.mass2 * traj2.vel[0]) / tb.total_mass
    expected = path[0] + np.outer(traj1.t - traj1.t[0], v_cm)
    return float(np.max(np.hypot(*(path - expected).T)))


def total_momentum(tb: TwoBodyState, traj1: Trajectory, traj2: Trajectory) -> np.ndarray:
    """Total linear momentum at every sample, shape (N, 2)."""
    return tb.mass1 * traj1.vel + tb.mass2 * traj2.vel


def total_angular_momentum(tb: TwoBodyState, traj1: Trajectory, traj2: Trajectory) -> np.ndarray:
    """Total angular momentum about the origin at every sample."""
    return tb.mass1 * traj1.angular_momentum + tb.mass2 * traj2.angular_momentum


def relative_trajectory(tb: TwoBodyState, traj1: Trajectory, traj2: Trajectory) -> Trajectory:
    """Separation vector r2 - r1 as a one-body trajectory in the relative field."""
    return Trajectory(
        t=traj1.t,
        pos=traj2.pos - traj1.pos,
        vel=traj2.vel - traj1.vel,
        field=relative_field(tb),
        stats=traj1.stats,
    )


def barycentric_trajectory(tb: TwoBodyState, traj: Trajectory, traj1: Trajectory, traj2: Trajectory) -> Trajectory:
    """One body's motion relative to the (moving) center of mass."""
    path = barycenter_path(tb, traj1, traj2)
    v_cm = (tb.mass1 * traj1.vel + tb.mass2 * traj2.vel) / tb.total_mass
    return Trajectory(t=traj.t, pos=traj.pos - path, vel=traj.vel - v_cm, field=traj.field, stats=traj.stats)


def initial_relative_state(tb: TwoBodyState) -> State2D:
    """Separation state r2 - r1, v2 - v1 at the start of the run."""
    return State2D(
        pos=(tb.state2.pos[0] - tb.state1.pos[0], tb.state2.pos[1] - tb.state1.pos[1]),
        vel=(tb.state2.vel[0] - tb.state1.vel[0], tb.state2.vel[1] - tb.state1.vel[1]),
        t=tb.state1.t,
    )
