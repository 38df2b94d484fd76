"""
Ellipse focal geometry for Orbita.

Exact focal geometry of the ellipse in its canonical centered frame: the polar
equation about a focus, focal distances, tangent-line properties and the two
curvature formulas. Everything here is a pure function of an ``EllipseGeom``.

Conventions:
    - The ellipse is centered at the origin with its major axis on the x-axis.
    - F1 = (-c, 0) is the attracting focus, F2 = (+c, 0).
    - The focal angle theta is measured at F1 from the direction of F2, so
      theta = 0 is the far vertex (r = a + c).
    - The parametric angle t gives P = (a cos t, b sin t).
"""

import logging
import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

logger = logging.getLogger("orbita.geometry")

CONSISTENCY_TOL = 1e-12


class GeometryError(Exception):
    """Base exception for geometry errors."""
    pass


class DomainError(GeometryError):
    """Exception raised when parameters fall outside the ellipse domain."""
    pass


class EllipseGeom(BaseModel):
    """
    Geometric ellipse in the canonical centered frame.

    Attributes:
        a: Semi-major length
        b: Semi-minor length
        c: Focal half-distance
        e: Eccentricity c/a
    """

    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c: float
    e: float

    @model_validator(mode="after")
    def _check_invariants(self) -> "EllipseGeom":
        if not (self.a >= self.b > 0.0):
            raise DomainError(f"Ellipse requires a >= b > 0, got a={self.a}, b={self.b}")
        if not (0.0 <= self.e < 1.0):
            raise DomainError(f"Ellipse eccentricity must lie in [0, 1), got {self.e}")
        mismatch = abs(self.b * self.b + self.c * self.c - self.a * self.a)
        if not (self.c >= 0.0) or mismatch > CONSISTENCY_TOL * self.a * self.a:
            raise DomainError(f"Ellipse requires c = sqrt(a^2 - b^2), got a={self.a}, b={self.b}, c={self.c}")
        if abs(self.e * self.a - self.c) > CONSISTENCY_TOL * self.a:
            raise DomainError(f"Ellipse requires e = c / a, got c={self.c}, a={self.a}, e={self.e}")
        return self

    @property
    def f1(self) -> np.ndarray:
        """The attracting focus (-c, 0)."""
        return np.array([-self.c, 0.0])

    @property
    def f2(self) -> np.ndarray:
        """The second focus (+c, 0)."""
        return np.array([self.c, 0.0])

    @property
    def semi_latus_rectum(self) -> float:
        return self.b * self.b / self.a


class TangentData(BaseModel):
    """
    Tangent-line data at a point of the ellipse.

    Attributes:
        epsilon: Acute angle between the chord PF1 and the tangent (radians)
        d1: Distance from F1 to the tangent line
        d2: Distance from F2 to the tangent line
        kappa: Curvature at P from the focal formula (a / b^2) sin^3(epsilon)
    """

    model_config = ConfigDict(frozen=True)

    epsilon: float
    d1: float
    d2: float
    kappa: float


def make_ellipse(a: float, c: float) -> EllipseGeom:
    """
    Build an ellipse from its semi-major axis and focal half-distance.

    Args:
        a: Semi-major length, a > 0
        c: Focal half-distance, 0 <= c < a

    Returns:
        The ellipse with b = sqrt(a^2 - c^2) and e = c / a

    Raises:
        DomainError: If a <= 0 or c is outside [0, a)
    """
    if not (a > 0.0) or not math.isfinite(a):
        logger.error(f"Rejected ellipse with a={a}")
        raise DomainError(f"Semi-major axis must be positive and finite, got a={a}")
    if not (0.0 <= c < a):
        logger.error(f"Rejected ellipse with a={a}, c={c}")
        raise DomainError(f"Focal half-distance must satisfy 0 <= c < a, got a={a}, c={c}")
    b = math.sqrt((a - c) * (a + c))
    return EllipseGeom(a=a, b=b, c=c, e=c / a)


def ellipse_from_axes(a: float, b: float) -> EllipseGeom:
    """Build an ellipse from its two semi-axes."""
    if not (a >= b > 0.0):
        raise DomainError(f"Ellipse requires a >= b > 0, got a={a}, b={b}")
    c = math.sqrt((a - b) * (a + b))
    return EllipseGeom(a=a, b=b, c=c, e=c / a)


def radius_at(ell: EllipseGeom, theta: float) -> float:
    """
    Focal radius |PF1| at focal angle theta, r = b^2 / (a - c cos theta).

    Args:
        ell: The ellipse
        theta: Angle at F1 measured from the direction of F2

    Returns:
        The distance from F1 to the ellipse point in that direction
    """
    return ell.b * ell.b / (ell.a - ell.c * math.cos(theta))


def point_at(ell: EllipseGeom, t: float) -> np.ndarray:
    """Point of the ellipse at parametric angle t."""
    return np.array([ell.a * math.cos(t), ell.b * math.sin(t)])


def point_and_focal_distances(ell: EllipseGeom, t: float) -> Tuple[np.ndarray, float, float]:
    """
    Point at parametric angle t together with both focal distances.

    Returns:
        (P, r1, r2) with r1 = |P - F1| and r2 = |P - F2|; r1 + r2 = 2a
    """
    p = point_at(ell, t)
    r1 = float(np.hypot(p[0] + ell.c, p[1]))
    r2 = float(np.hypot(p[0] - ell.c, p[1]))
    return p, r1, r2


def tangent_direction(ell: EllipseGeom, t: float) -> np.ndarray:
    """Unit tangent at parametric angle t, oriented with increasing t."""
    d = np.array([-ell.a * math.sin(t), ell.b * math.cos(t)])
    return d / np.hypot(d[0], d[1])


def _acute_angle(u: np.ndarray, v: np.ndarray) -> float:
    # atan2 keeps full precision near 0 and pi/2
    cross = abs(u[0] * v[1] - u[1] * v[0])
    dot = abs(u[0] * v[0] + u[1] * v[1])
    return math.atan2(cross, dot)


def focal_angles(ell: EllipseGeom, t: float) -> Tuple[float, float]:
    """
    Acute angles the tangent at P makes with the chords PF1 and PF2.

    The optical property says the two are equal.
    """
    p = point_at(ell, t)
    tangent = tangent_direction(ell, t)
    return _acute_angle(ell.f1 - p, tangent), _acute_angle(ell.f2 - p, tangent)


def tangent_data(ell: EllipseGeom, t: float) -> TangentData:
    """
    Tangent-line data at parametric angle t.

    Distances d1, d2 are measured perpendicular to the tangent line; their
    product is b^2. The curvature comes from the focal formula
    kappa = (a / b^2) sin^3(epsilon).

    Args:
        ell: The ellipse
        t: Parametric angle

    Returns:
        TangentData for the point
    """
    p = point_at(ell, t)
    tangent = tangent_direction(ell, t)
    to_f1 = ell.f1 - p
    to_f2 = ell.f2 - p
    epsilon = _acute_angle(to_f1, tangent)
    d1 = abs(tangent[0] * to_f1[1] - tangent[1] * to_f1[0])
    d2 = abs(tangent[0] * to_f2[1] - tangent[1] * to_f2[0])
    kappa = ell.a / (ell.b * ell.b) * math.sin(epsilon) ** 3
    return TangentData(epsilon=epsilon, d1=float(d1), d2=float(d2), kappa=kappa)


def curvature_parametric(ell: EllipseGeom, t: float) -> float:
    """
    Curvature from the parametric derivatives, (x'y'' - y'x'') / (x'^2 + y'^2)^(3/2).

    For the ellipse this is ab / (a^2 sin^2 t + b^2 cos^2 t)^(3/2).
    """
    dx, dy = -ell.a * math.sin(t), ell.b * math.cos(t)
    ddx, ddy = -ell.a * math.cos(t), -ell.b * math.sin(t)
    speed_sq = dx * dx + dy * dy
    return (dx * ddy - dy * ddx) / speed_sq ** 1.5


def param_to_focal_angle(ell: EllipseGeom, t: float) -> float:
    """Focal angle at F1 (measured toward F2) of the point at parametric angle t."""
    return math.atan2(ell.b * math.sin(t), ell.a * math.cos(t) + ell.c)


def focal_to_param_angle(ell: EllipseGeom, theta: float) -> float:
    """Parametric angle of the ellipse point seen from F1 at focal angle theta."""
    r = radius_at(ell, theta)
    x = -ell.c + r * math.cos(theta)
    y = r * math.sin(theta)
    return math.atan2(y / ell.b, x / ell.a)


def tangent_parallel_point(ell: EllipseGeom, t: float) -> np.ndarray:
    """
    Point K where the line through the center parallel to the tangent at P
    meets the segment PF1. |PK| equals a for every P.
    """
    p = point_at(ell, t)
    tangent = tangent_direction(ell, t)
    chord = ell.f1 - p
    denom = chord[0] * tangent[1] - chord[1] * tangent[0]
    s = -(p[0] * tangent[1] - p[1] * tangent[0]) / denom
    return p + s * chord
