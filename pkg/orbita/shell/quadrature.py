"""
Spherical shell quadrature for Orbita.

Numerically integrates the attraction of a uniform thin spherical shell on a
point mass. The shell surface is parameterised by mu = cos(alpha), the cosine
of the polar angle about the axis through the field point, and the azimuth
phi; the rule is Gauss-Legendre in mu times a uniform trapezoid in phi, so
dA = R^2 dmu dphi exactly. Mesh level L uses 2^(L+1) nodes in each direction.
"""

import functools
import logging
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator
from scipy.special import roots_legendre

logger = logging.getLogger("orbita.shell")

DEFAULT_MESH_LEVEL = 6
MAX_MESH_LEVEL = 12
NEAR_SURFACE_MARGIN = 1e-3
NEAR_SURFACE_MESH_LEVEL = 10


class ShellError(Exception):
    """Base exception for shell quadrature errors."""
    pass


class ExteriorPointError(ShellError):
    """Exception raised when the field point is inside or on the shell."""
    pass


class MeshError(ShellError):
    """Exception raised when the mesh cannot reach the requested accuracy."""
    pass


Vector3 = Tuple[float, float, float]


class ShellSpec(BaseModel):
    """
    Thin spherical shell of uniform surface density.

    Attributes:
        R: Shell radius
        rho: Surface mass density
        center: Shell center
    """

    model_config = ConfigDict(frozen=True)

    R: float
    rho: float
    center: Vector3 = (0.0, 0.0, 0.0)

    @field_validator("R", "rho")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not (value > 0.0 and math.isfinite(value)):
            raise ShellError(f"Shell radius and density must be positive and finite, got {value}")
        return value

    @property
    def mass(self) -> float:
        """Total mass 4 pi R^2 rho."""
        return 4.0 * math.pi * self.R * self.R * self.rho

    @property
    def origin(self) -> np.ndarray:
        return np.array(self.center, dtype=float)


class QuadratureResult(BaseModel):
    """
    Outcome of one shell (or solid ball) quadrature.

    Attributes:
        force: Force on the test mass (points toward the center for an
            exterior point)
        mesh_level: Refinement index used
        est_error: Relative change against the previous refinement level
        axial: Force component toward the center
        transverse: Magnitude of the component orthogonal to the axis
        n_nodes: Number of surface nodes
    """

    model_config = ConfigDict(frozen=True)

    force: Vector3
    mesh_level: int
    est_error: float
    axial: float
    transverse: float
    n_nodes: int

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.force))


def point_mass_force(G: float, m1: float, m2: float, d: float) -> float:
    """
    Magnitude G m1 m2 / d^2 of the attraction between two point masses.

    Raises:
        ShellError: If d <= 0
    """
    if not d > 0.0:
        raise ShellError(f"Separation must be positive, got {d}")
    return G * m1 * m2 / (d * d)


def _offset(shell: ShellSpec, P) -> Tuple[np.ndarray, float]:
    rel = np.asarray(P, dtype=float) - shell.origin
    if rel.shape != (3,):
        raise ShellError(f"Field point must be a 3-vector, got shape {rel.shape}")
    return rel, float(np.linalg.norm(rel))


def _require_exterior(shell: ShellSpec, d: float) -> None:
    if not d > shell.R:
        logger.error(f"Field point at distance {d} is not outside the shell of radius {shell.R}")
        raise ExteriorPointError(f"Point at |OP|={d} is not exterior to the shell of radius {shell.R}")


def inversion_point(shell: ShellSpec, P) -> np.ndarray:
    """
    Inversion point P' of P in the shell: on segment OP with |OP'| |OP| = R^2.

    Raises:
        ExteriorPointError: If P is inside or on the shell
    """
    rel, d = _offset(shell, P)
    _require_exterior(shell, d)
    return shell.origin + rel * (shell.R * shell.R / (d * d))


def _angle(u: np.ndarray, v: np.ndarray) -> float:
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(np.dot(u, v)))


def inversion_ratios(shell: ShellSpec, P, Q) -> Tuple[float, float, float]:
    """
    Similar-triangle data for a shell point Q.

    Returns:
        (|P'Q| / |PQ|, angle OQP', angle OPQ); the ratio equals R/|OP| and the
        two angles coincide
    """
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    O = shell.origin
    Pp = inversion_point(shell, P)
    ratio = float(np.linalg.norm(Q - Pp) / np.linalg.norm(Q - P))
    return ratio, _angle(O - Q, Pp - Q), _angle(O - P, Q - P)


@functools.lru_cache(maxsize=32)
def _nodes(level: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = 2 ** (level + 1)
    mu, w_mu = roots_legendre(n)
    phi = 2.0 * math.pi * np.arange(n) / n
    return mu, w_mu, phi


def _axis_frame(rel: np.ndarray, d: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    u = rel / d if d > 0.0 else np.array([0.0, 0.0, 1.0])
    helper = np.array([1.0, 0.0, 0.0]) if abs(u[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(u, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(u, e1)
    return u, e1, e2


def _surface(shell: ShellSpec, rel: np.ndarray, d: float, level: int):
    """Shell nodes relative to the center and their area weights."""
    mu, w_mu, phi = _nodes(level)
    u, e1, e2 = _axis_frame(rel, d)
    s = np.sqrt(1.0 - mu * mu)
    radial = (
        mu[:, None, None] * u
        + (s[:, None] * np.cos(phi)[None, :])[:, :, None] * e1
        + (s[:, None] * np.sin(phi)[None, :])[:, :, None] * e2
    )
    Q = shell.R * radial
    dA = (shell.R * shell.R * (2.0 * math.pi / len(phi))) * np.broadcast_to(w_mu[:, None], (len(mu), len(phi)))
    return Q.reshape(-1, 3), dA.reshape(-1), u


def projected_solid_angle(shell: ShellSpec, P, mesh_level: int = DEFAULT_MESH_LEVEL) -> float:
    """
    Sum of dA cos(theta) / |P'Q|^2 over the quadrature nodes.

    theta is the angle OPQ, equal to the angle between the shell normal at Q
    and the ray from P'. Each term is the solid angle an area element
    subtends at the interior point P', so the sum tends to 4 pi.
    """
    rel, d = _offset(shell, P)
    _require_exterior(shell, d)
    Q, dA, u = _surface(shell, rel, d, mesh_level)
    Pp = rel * (shell.R * shell.R / (d * d))
    to_center = -rel
    to_q = Q - rel
    cos_theta = (to_q @ to_center) / (np.linalg.norm(to_q, axis=1) * d)
    dist_sq = np.sum((Q - Pp) ** 2, axis=1)
    return float(np.sum(dA * cos_theta / dist_sq))


def _force_at_level(shell: ShellSpec, rel: np.ndarray, d: float, m1: float, G: float, level: int):
    Q, dA, u = _surface(shell, rel, d, level)
    sep = Q - rel
    dist = np.linalg.norm(sep, axis=1)
    weights = (G * m1 * shell.rho) * dA / dist ** 3
    force = np.sum(sep * weights[:, None], axis=0)
    axial = -float(np.dot(force, u))
    transverse = float(np.linalg.norm(force + axial * u))
    return force, axial, transverse, len(dA)


def shell_force_quadrature(
    shell: ShellSpec,
    P,
    m1: float = 1.0,
    G: float = 1.0,
    mesh_level: int = DEFAULT_MESH_LEVEL,
    rtol: Optional[float] = None,
    allow_interior: bool = False,
) -> QuadratureResult:
    """
    Attraction of a uniform shell on a point mass m1 at P.

    Args:
        shell: The shell
        P: Field point (3-vector)
        m1: Test mass
        G: Gravitational constant
        mesh_level: Refinement index, >= 1
        rtol: Optional accuracy requirement on the error estimate
        allow_interior: Permit interior points (health check; not a
            supported feature)

    Returns:
        QuadratureResult whose est_error compares against level - 1

    Raises:
        ExteriorPointError: For interior or on-surface P
        MeshError: For invalid levels, near-surface points at coarse levels,
            or an unmet ``rtol``
    """
    if not 1 <= mesh_level <= MAX_MESH_LEVEL:
        raise MeshError(f"Mesh level must be in [1, {MAX_MESH_LEVEL}], got {mesh_level}")
    rel, d = _offset(shell, P)
    if allow_interior and d < shell.R:
        logger.debug(f"Interior evaluation at |OP|={d} with R={shell.R}")
    else:
        _require_exterior(shell, d)
        if d < shell.R * (1.0 + NEAR_SURFACE_MARGIN) and mesh_level < NEAR_SURFACE_MESH_LEVEL:
            raise MeshError(
                f"Point at |OP|/R={d / shell.R:.6g} is too close to the surface for mesh level "
                f"{mesh_level}; use level >= {NEAR_SURFACE_MESH_LEVEL}"
            )

    force, axial, transverse, n_nodes = _force_at_level(shell, rel, d, m1, G, mesh_level)
    coarse, _, _, _ = _force_at_level(shell, rel, d, m1, G, mesh_level - 1)
    magnitude = float(np.linalg.norm(force))
    change = float(np.linalg.norm(force - coarse))
    est_error = change / magnitude if magnitude > 0.0 else change

    if rtol is not None and est_error > rtol:
        logger.error(f"Shell quadrature at level {mesh_level} has est_error {est_error:.3e} > {rtol:.3e}")
        raise MeshError(f"Mesh level {mesh_level} too coarse: est_error {est_error:.3e} exceeds {rtol:.3e}")

    logger.debug(f"Shell quadrature level {mesh_level}: axial={axial:.17g}, est_error={est_error:.3e}")
    return QuadratureResult(
        force=(float(force[0]), float(force[1]), float(force[2])),
        mesh_level=mesh_level,
        est_error=est_error,
        axial=axial,
        transverse=transverse,
        n_nodes=n_nodes,
    )


def shell_force_adaptive(
    shell: ShellSpec,
    P,
    m1: float = 1.0,
    G: float = 1.0,
    rtol: float = 1e-10,
    start_level: int = 2,
    max_level: int = MAX_MESH_LEVEL,
) -> QuadratureResult:
    """
    Refine the shell quadrature until est_error <= rtol.

    Raises:
        MeshError: If max_level is reached first
    """
    level = start_level
    while level <= max_level:
        try:
            result = shell_force_quadrature(shell, P, m1, G, mesh_level=level)
        except MeshError:
            level += 1
            continue
        if result.est_error <= rtol:
            logger.info(f"Shell quadrature converged at level {level} (est_error {result.est_error:.3e})")
            return result
        level += 1
    raise MeshError(f"Shell quadrature did not reach rtol={rtol:.3e} by level {max_level}")
