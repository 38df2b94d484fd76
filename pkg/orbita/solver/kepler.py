"""
Kepler problem solver for Orbita.

From an inverse-square field and an initial state, produce the conic orbit in
closed form. The construction follows the hodograph: along any inverse-square
orbit v(theta) = (C/k)(-sin theta, cos theta) + delta for a constant vector
delta, and the area law then yields

    1/r = (C / k^2) (1 + e cos(theta - omega)),  e = k |delta| / C.

The same conic follows from the general solution q = A cos(theta + theta0) + h
of the Binet equation. Repulsive fields give the far hyperbola branch.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.optimize import brentq

from orbita.core.config import SimConfig
from orbita.dynamics import CentralField, State2D, Trajectory, integrate
from orbita.geometry import (
    ConicOrbit,
    ConicType,
    DomainError,
    conic_classify,
    conic_from_signed,
    normalize_angle,
)

logger = logging.getLogger("orbita.solver")

RETURN_TOL = 1e-8


class SolverError(Exception):
    """Base exception for Kepler problem errors."""
    pass


class DegenerateOrbitError(SolverError):
    """Exception raised for radial (k = 0) motion or a missing attractive balance."""
    pass


class UnboundOrbitError(SolverError):
    """Exception raised when a bound-orbit quantity is requested for an open orbit."""
    pass


class AdmissibleRangeError(SolverError):
    """Exception raised for angles outside an open orbit's branch."""
    pass


class KeplerSolution(BaseModel):
    """
    Closed-form solution of the Kepler problem.

    Attributes:
        orbit: The conic orbit in the inertial frame
        k: Specific angular momentum pos x vel
        delta: Constant offset of the hodograph circle
        energy: Specific energy v^2/2 - C/r
        C: Field strength
    """

    model_config = ConfigDict(frozen=True)

    orbit: ConicOrbit
    k: float
    delta: Tuple[float, float]
    energy: float
    C: float

    @property
    def bound(self) -> bool:
        """Circles and ellipses only; near-parabolic orbits count as open."""
        if self.orbit.repulsive:
            return False
        return conic_classify(self.orbit) in (ConicType.CIRCLE, ConicType.ELLIPSE)


def _require_inverse_square(field: CentralField) -> None:
    if field.n != -2.0:
        raise SolverError(f"The Kepler solver needs an inverse-square field, got n={field.n}")


def solve_kepler(field: CentralField, s0: State2D, require_bound: bool = False) -> KeplerSolution:
    """
    Solve the Kepler problem for an initial state.

    Args:
        field: Inverse-square field; C < 0 (repulsive) gives a hyperbola
        s0: Initial state with non-zero angular momentum
        require_bound: Reject open orbits instead of returning them

    Returns:
        The solution with p = k^2 / |C|, e = k |delta| / |C| and omega placed so
        that r(theta0) reproduces the initial radius

    Raises:
        DegenerateOrbitError: For radial motion (k = 0)
        UnboundOrbitError: If ``require_bound`` and the orbit is open
    """
    _require_inverse_square(field)
    pos, vel = s0.position, s0.velocity
    r0 = s0.radius
    if r0 == 0.0:
        raise DegenerateOrbitError("Initial position is at the center")
    k = s0.angular_momentum
    if abs(k) <= 1e-14 * r0 * float(np.hypot(*vel)) or k == 0.0:
        logger.error(f"Radial initial state pos={s0.pos}, vel={s0.vel}")
        raise DegenerateOrbitError("Angular momentum is zero; the motion is radial")

    C = field.C
    theta0 = math.atan2(pos[1], pos[0])
    delta = vel - (C / k) * np.array([-math.sin(theta0), math.cos(theta0)])
    e_vec = (k / C) * np.array([delta[1], -delta[0]])
    e = float(np.hypot(*e_vec))
    p = k * k / abs(C)

    if e == 0.0:
        omega = 0.0
    elif C > 0.0:
        omega = math.atan2(e_vec[1], e_vec[0])
    else:
        omega = math.atan2(-e_vec[1], -e_vec[0])

    orbit = ConicOrbit(p=p, e=e, omega=omega, sense=1 if k > 0.0 else -1, repulsive=C < 0.0)
    energy = 0.5 * float(np.dot(vel, vel)) - C / r0
    solution = KeplerSolution(orbit=orbit, k=k, delta=(float(delta[0]), float(delta[1])), energy=energy, C=C)

    logger.debug(f"Kepler solution: p={p:.12g}, e={e:.12g}, omega={omega:.12g}, energy={energy:.12g}")
    if require_bound and not solution.bound:
        raise UnboundOrbitError(f"Orbit is not bound (e={e}, C={C})")
    return solution


def binet_solve(h: float, A: float, theta0: float = 0.0, sense: int = 1) -> ConicOrbit:
    """
    Conic from the general Binet solution q = A cos(theta + theta0) + h.

    Args:
        h: Constant term, the attractive balance C / k^2; must be positive
        A: Oscillation amplitude
        theta0: Phase

    Returns:
        ConicOrbit with p = 1/h and e = |A|/h, the sign absorbed into omega

    Raises:
        DegenerateOrbitError: If h <= 0
    """
    if not h > 0.0:
        raise DegenerateOrbitError(f"Binet constant must be positive for an attractive balance, got h={h}")
    return conic_from_signed(1.0 / h, A / h, -theta0, sense)


def binet_constants(C: float, s0: State2D) -> Tuple[float, float, float]:
    """
    Constants (h, A, theta0) of the Binet solution through an initial state.

    h = C / k^2, and A, theta0 match q = 1/r and dq/dtheta = -(dr/dt) / k at
    the initial polar angle.

    Raises:
        DegenerateOrbitError: For radial motion
    """
    k = s0.angular_momentum
    if k == 0.0:
        raise DegenerateOrbitError("Angular momentum is zero; the motion is radial")
    r0 = s0.radius
    theta_i = math.atan2(s0.pos[1], s0.pos[0])
    h = C / (k * k)
    q0 = 1.0 / r0
    r_dot = float(np.dot(s0.position, s0.velocity)) / r0
    q_prime = -r_dot / k
    phase = math.atan2(-q_prime, q0 - h)
    return h, math.hypot(q0 - h, q_prime), phase - theta_i


def orbit_period(orbit: ConicOrbit, C: float) -> float:
    """
    Period T = 2 pi sqrt(a^3 / C) of a bound orbit, a = p / (1 - e^2).

    Raises:
        UnboundOrbitError: For e >= 1, repulsive orbits or C <= 0
    """
    if orbit.repulsive or orbit.e >= 1.0 or not C > 0.0:
        raise UnboundOrbitError(f"Orbit with e={orbit.e}, C={C} is not bound and has no period")
    a = orbit.p / (1.0 - orbit.e * orbit.e)
    return 2.0 * math.pi * math.sqrt(a ** 3 / C)


def predict_position(sol: KeplerSolution, theta: float) -> np.ndarray:
    """
    Position on the solution's conic at polar angle theta.

    Raises:
        AdmissibleRangeError: If theta lies outside an open orbit's branch
    """
    try:
        r = sol.orbit.radius(theta)
    except DomainError as e:
        raise AdmissibleRangeError(str(e)) from e
    return np.array([r * math.cos(theta), r * math.sin(theta)])


def closest_approach(sol: KeplerSolution) -> float:
    """Periapsis distance; p / (e - 1) for repulsive scattering."""
    return sol.orbit.periapsis


def eccentricity_vector(C: float, s: State2D) -> np.ndarray:
    """Eccentricity vector ((v^2 - C/r) r - (r.v) v) / C, pointing at periapsis."""
    pos, vel = s.position, s.velocity
    r = s.radius
    v_sq = float(np.dot(vel, vel))
    return ((v_sq - C / r) * pos - float(np.dot(pos, vel)) * vel) / C


def vis_viva_semi_major_axis(C: float, s: State2D) -> float:
    """Semi-major axis from the vis-viva relation, a = 1 / (2/r - v^2/C)."""
    vel = s.velocity
    return 1.0 / (2.0 / s.radius - float(np.dot(vel, vel)) / C)


def roundtrip_deviation(sol: KeplerSolution, traj: Trajectory) -> float:
    """Largest |r_numeric - r_closed_form(theta)| over a trajectory's samples."""
    thetas = np.arctan2(traj.pos[:, 1], traj.pos[:, 0])
    predicted = np.array([sol.orbit.radius(th) for th in thetas])
    return float(np.max(np.abs(traj.radius - predicted)))


def conic_fit_residual(traj: Trajectory, C: float) -> float:
    """
    Relative deviation of a trajectory from the conic fitted to its first state.

    The scale is the semi-major axis for bound orbits and p otherwise.
    """
    sol = solve_kepler(CentralField(C=C, n=-2.0), traj.state(0))
    scale = sol.orbit.semi_major_axis if sol.bound else sol.orbit.p
    return roundtrip_deviation(sol, traj) / scale


def _swept_angle(traj: Trajectory, sense: int) -> np.ndarray:
    theta = np.unwrap(np.arctan2(traj.pos[:, 1], traj.pos[:, 0]))
    return sense * (theta - theta[0])


def find_period(
    field: CentralField,
    s0: State2D,
    cfg: Optional[SimConfig] = None,
    initial_window: Optional[float] = None,
    max_doublings: int = 20,
) -> float:
    """
    Numerical period: the first time the state returns to its initial value.

    The trajectory is integrated over a growing window until the position has
    swept a full turn; the crossing is located with a bracketing root finder
    on the dense solution, and the return is accepted only if position and
    velocity both match their initial values to 1e-8 relative.

    Raises:
        SolverError: If no return is found
    """
    cfg = cfg or SimConfig()
    k = s0.angular_momentum
    if k == 0.0:
        raise DegenerateOrbitError("Radial motion never returns")
    sense = 1 if k > 0.0 else -1
    speed = float(np.hypot(*s0.velocity))
    window = initial_window or 2.0 * math.pi * s0.radius / speed

    for _ in range(max_doublings):
        traj = integrate(field, s0, window, cfg)
        swept = _swept_angle(traj, sense)
        crossed = np.nonzero(swept >= 2.0 * math.pi)[0]
        if crossed.size == 0:
            window *= 2.0
            continue
        i = int(crossed[0])
        theta_prev = float(np.arctan2(traj.pos[i - 1, 1], traj.pos[i - 1, 0]))

        def event(t: float) -> float:
            y = traj.state_at(t)
            step = normalize_angle(math.atan2(y[1], y[0]) - theta_prev)
            return swept[i - 1] + sense * step - 2.0 * math.pi

        t_return = brentq(event, traj.t[i - 1], traj.t[i], xtol=1e-15, rtol=4.0 * np.finfo(float).eps)
        y = traj.state_at(t_return)
        scale = 0.5 * (traj.radius.min() + traj.radius.max())
        d_pos = float(np.hypot(y[0] - s0.pos[0], y[1] - s0.pos[1]))
        d_vel = float(np.hypot(y[2] - s0.vel[0], y[3] - s0.vel[1]))
        if d_pos >= RETURN_TOL * scale or d_vel >= RETURN_TOL * speed:
            logger.error(f"No return to the initial state: |dpos|={d_pos:.3e}, |dvel|={d_vel:.3e}")
            raise SolverError(f"Orbit does not close: |dpos|={d_pos:.3e}, |dvel|={d_vel:.3e}")
        period = t_return - s0.t
        logger.debug(f"Numerical period {period:.15g}")
        return period

    raise SolverError(f"No full revolution within {window:.6g} time units")
