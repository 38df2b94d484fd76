"""
Trajectory integration for Orbita.

The adaptive integrator drives scipy's embedded Runge-Kutta pairs (DOP853 by
default) step by step so that the step budget and the collision guard can be
enforced exactly; every step's dense interpolant is kept, and the trajectory
is sampled on a uniform time grid. A classical fixed-step RK4 is available for
convergence studies. These trajectories are the numerical oracle against
which the closed forms are checked.
"""

import logging
import math
import time
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field as PydanticField
from scipy.integrate import DOP853, RK45, OdeSolution

from orbita.core.config import SimConfig
from orbita.dynamics.fields import (
    CollisionError,
    DynamicsError,
    Field,
    IntegrationError,
    StepLimitError,
)

logger = logging.getLogger("orbita.dynamics")

_ADAPTIVE_METHODS = {"DOP853": DOP853, "RK45": RK45}

Guard = Callable[[np.ndarray, np.ndarray], Optional[str]]


class State2D(BaseModel):
    """
    Planar position/velocity at a time.

    Attributes:
        pos: Position (x, y)
        vel: Velocity (vx, vy)
        t: Time
    """

    model_config = ConfigDict(frozen=True)

    pos: Tuple[float, float]
    vel: Tuple[float, float]
    t: float = 0.0

    @property
    def position(self) -> np.ndarray:
        return np.array(self.pos, dtype=float)

    @property
    def velocity(self) -> np.ndarray:
        return np.array(self.vel, dtype=float)

    @property
    def radius(self) -> float:
        return math.hypot(self.pos[0], self.pos[1])

    @property
    def angular_momentum(self) -> float:
        """Specific angular momentum k = pos x vel."""
        return self.pos[0] * self.vel[1] - self.pos[1] * self.vel[0]


class IntegratorStats(BaseModel):
    """Bookkeeping of one integration run."""

    integrator: str
    method: str
    rel_tol: float
    abs_tol: float
    n_steps: int
    n_evaluations: int
    wall_time: float


class Trajectory(BaseModel):
    """
    Uniformly sampled trajectory.

    Attributes:
        t: Sample times, strictly increasing and uniformly spaced
        pos: Positions, shape (N, 2)
        vel: Velocities, shape (N, 2)
        field: Field the trajectory was integrated in (one-body field for
            two-body runs)
        stats: Integrator bookkeeping
        dense: Continuous solution when the adaptive integrator was used
        dense_index: Components of the dense solution holding (x, y, vx, vy)
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    t: np.ndarray
    pos: np.ndarray
    vel: np.ndarray
    field: Optional[Field] = None
    stats: Optional[IntegratorStats] = None
    dense: Optional[OdeSolution] = PydanticField(default=None, repr=False)
    dense_index: Tuple[int, int, int, int] = (0, 1, 2, 3)

    def __len__(self) -> int:
        return len(self.t)

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])

    @property
    def radius(self) -> np.ndarray:
        return np.hypot(self.pos[:, 0], self.pos[:, 1])

    @property
    def angular_momentum(self) -> np.ndarray:
        return self.pos[:, 0] * self.vel[:, 1] - self.pos[:, 1] * self.vel[:, 0]

    def state(self, index: int) -> State2D:
        return State2D(
            pos=(float(self.pos[index, 0]), float(self.pos[index, 1])),
            vel=(float(self.vel[index, 0]), float(self.vel[index, 1])),
            t=float(self.t[index]),
        )

    @property
    def samples(self) -> List[State2D]:
        return [self.state(i) for i in range(len(self.t))]

    def state_at(self, t: float) -> np.ndarray:
        """Interpolated state vector (x, y, vx, vy) at time t."""
        if self.dense is None:
            raise DynamicsError("Trajectory has no dense output; integrate adaptively")
        return np.asarray(self.dense(t))[list(self.dense_index)]


def _segment_distance(p0: np.ndarray, p1: np.ndarray) -> float:
    """Distance from the origin to the segment p0-p1."""
    d = p1 - p0
    length_sq = float(np.dot(d, d))
    if length_sq == 0.0:
        return float(np.hypot(p0[0], p0[1]))
    s = min(1.0, max(0.0, -float(np.dot(p0, d)) / length_sq))
    closest = p0 + s * d
    return float(np.hypot(closest[0], closest[1]))


def collision_guard(r_min: float, index: slice = slice(0, 2)) -> Guard:
    """
    Build a guard that trips when a step comes within ``r_min`` of the origin.

    Args:
        r_min: Collision radius
        index: Slice of the state vector holding the (relative) position
    """

    def guard(y_old: np.ndarray, y_new: np.ndarray) -> Optional[str]:
        distance = _segment_distance(y_old[index], y_new[index])
        if distance < r_min:
            return f"trajectory came within {distance:.3e} of the center (r_min={r_min:.3e})"
        return None

    return guard


def run_adaptive(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    t0: float,
    duration: float,
    cfg: SimConfig,
    guard: Guard,
) -> Tuple[np.ndarray, np.ndarray, OdeSolution, IntegratorStats]:
    """
    Integrate a first-order system with an embedded Runge-Kutta pair.

    Returns:
        (sample times, sampled states with shape (N, dim), dense solution, stats)

    Raises:
        CollisionError: If the guard trips
        StepLimitError: If more than cfg.max_steps steps are needed
        IntegrationError: If the step size collapses for another reason
    """
    start = time.perf_counter()
    solver = _ADAPTIVE_METHODS[cfg.method](
        rhs, t0, np.asarray(y0, dtype=float), t0 + duration,
        rtol=cfg.rel_tol, atol=cfg.abs_tol,
    )
    ts = [t0]
    interpolants = []
    n_steps = 0
    while solver.status == "running":
        y_old = solver.y.copy()
        message = solver.step()
        if solver.status == "failed":
            logger.error(f"Integrator failed at t={solver.t}: {message}")
            raise IntegrationError(f"Integrator failed at t={solver.t}: {message}")
        n_steps += 1
        problem = guard(y_old, solver.y)
        if problem is not None:
            logger.error(f"Collision at t={solver.t}: {problem}")
            raise CollisionError(f"Collision at t={solver.t:.6g}: {problem}")
        if n_steps >= cfg.max_steps and solver.status == "running":
            logger.error(f"Step limit {cfg.max_steps} reached at t={solver.t}")
            raise StepLimitError(f"Step limit {cfg.max_steps} reached at t={solver.t:.6g}")
        interpolants.append(solver.dense_output())
        ts.append(solver.t)

    dense = OdeSolution(np.array(ts), interpolants)
    t_out = np.linspace(t0, t0 + duration, cfg.n_output)
    y_out = np.asarray(dense(t_out)).T
    stats = IntegratorStats(
        integrator="adaptive",
        method=cfg.method,
        rel_tol=cfg.rel_tol,
        abs_tol=cfg.abs_tol,
        n_steps=n_steps,
        n_evaluations=solver.nfev,
        wall_time=time.perf_counter() - start,
    )
    return t_out, y_out, dense, stats


def run_fixed(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    t0: float,
    duration: float,
    cfg: SimConfig,
    guard: Guard,
) -> Tuple[np.ndarray, np.ndarray, IntegratorStats]:
    """
    Integrate with the classical fixed-step RK4 scheme.

    The step is cfg.fixed_step shrunk so that it divides the duration.
    Every step is returned as a sample.
    """
    start = time.perf_counter()
    n_steps = max(1, int(math.ceil(duration / cfg.fixed_step - 1e-12)))
    if n_steps > cfg.max_steps:
        raise StepLimitError(f"Fixed step needs {n_steps} steps, limit is {cfg.max_steps}")
    h = duration / n_steps
    ys = np.empty((n_steps + 1, len(y0)))
    ys[0] = y0
    t = t0
    for i in range(n_steps):
        y = ys[i]
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(t + h, y + h * k3)
        ys[i + 1] = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t0 + (i + 1) * h
        problem = guard(y, ys[i + 1])
        if problem is not None:
            raise CollisionError(f"Collision at t={t:.6g}: {problem}")
    stats = IntegratorStats(
        integrator="fixed",
        method="RK4",
        rel_tol=0.0,
        abs_tol=0.0,
        n_steps=n_steps,
        n_evaluations=4 * n_steps,
        wall_time=time.perf_counter() - start,
    )
    return t0 + h * np.arange(n_steps + 1), ys, stats


def _one_body_rhs(field: Field) -> Callable[[float, np.ndarray], np.ndarray]:
    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        acc = field.acceleration(y[:2])
        return np.array([y[2], y[3], acc[0], acc[1]])

    return rhs


def integrate(
    field: Field,
    s0: State2D,
    duration: float,
    cfg: Optional[SimConfig] = None,
) -> Trajectory:
    """
    Integrate one body in a (central or perturbed) field.

    Args:
        field: The force field
        s0: Initial state, away from the origin
        duration: Integration time span, > 0
        cfg: Integrator settings

    Returns:
        Trajectory sampled on cfg.n_output uniform times (adaptive) or on the
        step grid (fixed)

    Raises:
        CollisionError: If the body comes within r_min of the origin
        StepLimitError: If the step budget is exhausted
        DynamicsError: On invalid input
    """
    cfg = cfg or SimConfig()
    r0 = s0.radius
    if r0 == 0.0:
        raise CollisionError("Initial position is at the center")
    if not duration > 0.0:
        raise DynamicsError(f"Duration must be positive, got {duration}")

    y0 = np.array([*s0.pos, *s0.vel], dtype=float)
    guard = collision_guard(cfg.r_min_factor * r0)
    rhs = _one_body_rhs(field)
    logger.debug(f"Integrating {cfg.integrator} from t={s0.t} for {duration} time units")

    dense = None
    if cfg.integrator == "adaptive":
        t, y, dense, stats = run_adaptive(rhs, y0, s0.t, duration, cfg, guard)
    else:
        t, y, stats = run_fixed(rhs, y0, s0.t, duration, cfg, guard)

    logger.debug(
        f"Integration done: {stats.n_steps} steps, {stats.n_evaluations} evaluations, "
        f"{stats.wall_time:.3f}s"
    )
    return Trajectory(t=t, pos=y[:, :2], vel=y[:, 2:], field=field, stats=stats, dense=dense)
