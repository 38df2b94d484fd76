"""
Conic orbits in focal polar form for Orbita.

A ``ConicOrbit`` is the dynamical description r(theta) = p / (1 + e cos(theta - omega))
with the attracting center at the origin. Repulsive orbits use the far branch
r(theta) = p / (e cos(theta - omega) - 1), which keeps the center on the
convex side of the hyperbola.

The ellipse module measures its focal angle from the far vertex while conic
orbits measure from perihelion; ``geom_to_conic_angle`` is the single bridge.
"""

import logging
import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from orbita.geometry.ellipse import DomainError, EllipseGeom, make_ellipse

logger = logging.getLogger("orbita.geometry")

DEFAULT_ECCENTRICITY_TOL = 1e-9


class ConicType(str, Enum):
    """Classification of a conic orbit by eccentricity."""
    CIRCLE = "circle"
    ELLIPSE = "ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"


class ConicOrbit(BaseModel):
    """
    Conic orbit about a focus at the origin.

    Attributes:
        p: Semi-latus rectum
        e: Eccentricity, normalized to e >= 0
        omega: Perihelion axis angle (radians)
        sense: Direction of motion, +1 counter-clockwise, -1 clockwise
        repulsive: Whether the orbit is the far branch of a repulsive field
    """

    model_config = ConfigDict(frozen=True)

    p: float
    e: float
    omega: float = 0.0
    sense: int = 1
    repulsive: bool = False

    @model_validator(mode="after")
    def _check_invariants(self) -> "ConicOrbit":
        if not (self.p > 0.0) or not math.isfinite(self.p):
            raise DomainError(f"Semi-latus rectum must be positive, got p={self.p}")
        if self.e < 0.0:
            raise DomainError(f"Eccentricity must be normalized to e >= 0, got e={self.e}")
        if self.sense not in (1, -1):
            raise DomainError(f"Orbit sense must be +1 or -1, got {self.sense}")
        if self.repulsive and self.e <= 1.0:
            raise DomainError(f"Repulsive orbits are hyperbolic, got e={self.e}")
        return self

    def denominator(self, theta: float) -> float:
        cos_term = self.e * math.cos(theta - self.omega)
        return cos_term - 1.0 if self.repulsive else 1.0 + cos_term

    def is_admissible(self, theta: float) -> bool:
        """Whether theta lies on the orbit (positive finite radius)."""
        return self.denominator(theta) > 0.0

    def radius(self, theta: float) -> float:
        """
        Focal radius at polar angle theta.

        Raises:
            DomainError: If theta lies outside the orbit's admissible range
        """
        denom = self.denominator(theta)
        if denom <= 0.0:
            raise DomainError(
                f"Angle {theta} is outside the admissible range of the orbit "
                f"(p={self.p}, e={self.e}, omega={self.omega})"
            )
        return self.p / denom

    @property
    def semi_major_axis(self) -> float:
        """Semi-major axis a = p / |1 - e^2| (infinite for a parabola)."""
        denom = abs(1.0 - self.e * self.e)
        return math.inf if denom == 0.0 else self.p / denom

    @property
    def periapsis(self) -> float:
        """Closest distance to the focus."""
        return self.p / (self.e - 1.0) if self.repulsive else self.p / (1.0 + self.e)

    def asymptote_half_angle(self) -> float:
        """Half-width of the admissible angle range about omega for open orbits."""
        if self.e < 1.0:
            return math.pi
        if self.repulsive:
            return math.acos(1.0 / self.e)
        return math.acos(-1.0 / self.e)


def normalize_angle(angle: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    return math.atan2(math.sin(angle), math.cos(angle))


def conic_from_signed(p: float, e_signed: float, omega: float = 0.0, sense: int = 1) -> ConicOrbit:
    """
    Build a conic from a possibly negative eccentricity.

    A negative eccentricity is the same curve rotated by pi, so the sign is
    absorbed into omega.
    """
    if e_signed < 0.0:
        return ConicOrbit(p=p, e=-e_signed, omega=normalize_angle(omega + math.pi), sense=sense)
    return ConicOrbit(p=p, e=e_signed, omega=normalize_angle(omega), sense=sense)


def geom_to_conic_angle(theta_geom: float) -> float:
    """Focal angle of the ellipse frame (from the far vertex) to the conic frame (from perihelion)."""
    return math.pi - theta_geom


def conic_to_geom_angle(theta_conic: float) -> float:
    """Inverse of ``geom_to_conic_angle``."""
    return math.pi - theta_conic


def conic_from_ellipse(ell: EllipseGeom, omega: float = 0.0, sense: int = 1) -> ConicOrbit:
    """Dynamical orbit of an ellipse with its attracting focus at the origin."""
    return ConicOrbit(p=ell.b * ell.b / ell.a, e=ell.e, omega=omega, sense=sense)


def conic_to_ellipse(orbit: ConicOrbit) -> EllipseGeom:
    """
    Geometric ellipse of a bound orbit, a = p / (1 - e^2).

    Raises:
        DomainError: If the orbit is not bound
    """
    if orbit.e >= 1.0 or orbit.repulsive:
        raise DomainError(f"Only bound orbits convert to an ellipse, got e={orbit.e}")
    a = orbit.p / (1.0 - orbit.e * orbit.e)
    return make_ellipse(a, a * orbit.e)


def conic_classify(orbit: ConicOrbit, tol_e: float = DEFAULT_ECCENTRICITY_TOL) -> ConicType:
    """
    Classify an orbit as circle, ellipse, parabola or hyperbola.

    Args:
        orbit: The orbit to classify
        tol_e: Eccentricity tolerance for the circle and parabola cases

    Returns:
        The conic type
    """
    e = orbit.e
    if e < tol_e:
        return ConicType.CIRCLE
    if abs(e - 1.0) <= tol_e:
        return ConicType.PARABOLA
    if e < 1.0 - tol_e:
        return ConicType.ELLIPSE
    return ConicType.HYPERBOLA
