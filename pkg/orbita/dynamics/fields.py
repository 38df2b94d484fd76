"""
Force fields for Orbita.

Power-law central fields a = -C r^n r_hat (attractive for C > 0) and a
non-central variant with a constant force added, used to show that the area
law fails as soon as the force stops pointing at the center.
"""

import logging
import math
from typing import Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

logger = logging.getLogger("orbita.dynamics")


class DynamicsError(Exception):
    """Base exception for dynamics errors."""
    pass


class CollisionError(DynamicsError):
    """Exception raised when a trajectory reaches the central singularity."""
    pass


class StepLimitError(DynamicsError):
    """Exception raised when an integration exceeds its step budget."""
    pass


class IntegrationError(DynamicsError):
    """Exception raised when the underlying integrator fails."""
    pass


class StencilError(DynamicsError):
    """Exception raised when a finite-difference stencil does not fit the data."""
    pass


class CentralField(BaseModel):
    """
    Power-law central force field.

    Attributes:
        C: Field strength; C > 0 attracts toward the origin, C < 0 repels
        n: Force exponent, -2 for the inverse-square law
    """

    model_config = ConfigDict(frozen=True)

    C: float
    n: float = -2.0

    @field_validator("C")
    @classmethod
    def _nonzero(cls, value: float) -> float:
        if value == 0.0 or not math.isfinite(value):
            raise DynamicsError(f"Field strength must be non-zero and finite, got {value}")
        return value

    @property
    def attractive(self) -> bool:
        return self.C > 0.0

    def acceleration(self, pos: np.ndarray) -> np.ndarray:
        r = math.hypot(pos[0], pos[1])
        if r == 0.0:
            raise CollisionError("Central field is singular at the origin")
        return -self.C * r ** (self.n - 1.0) * pos

    def radial_force(self, r: np.ndarray, mass: float = 1.0) -> np.ndarray:
        """Signed radial force F(r); negative values point at the center."""
        return -mass * self.C * np.power(r, self.n)

    def potential(self, r: float) -> float:
        """Potential per unit mass with acceleration = -grad U."""
        if self.n == -1.0:
            return self.C * math.log(r)
        return self.C * r ** (self.n + 1.0) / (self.n + 1.0)


class PerturbedField(BaseModel):
    """
    Central field plus a constant force; not central, so angular momentum drifts.

    Attributes:
        base: The central part
        bias: Constant acceleration vector added everywhere
    """

    model_config = ConfigDict(frozen=True)

    base: CentralField
    bias: Tuple[float, float]

    def acceleration(self, pos: np.ndarray) -> np.ndarray:
        return self.base.acceleration(pos) + np.asarray(self.bias)

    def potential(self, r: float, pos: np.ndarray) -> float:
        return self.base.potential(r) - float(np.dot(self.bias, pos))


Field = Union[CentralField, PerturbedField]


def accelerate(field: Field, pos) -> np.ndarray:
    """
    Acceleration of a unit mass at ``pos``.

    Args:
        field: Central or perturbed field
        pos: Position 2-vector

    Returns:
        The acceleration vector; -C |pos|^n pos/|pos| for a central field

    Raises:
        CollisionError: At the origin, where the field is singular
    """
    position = np.asarray(pos, dtype=float)
    if position.shape != (2,):
        raise DynamicsError(f"Position must be a 2-vector, got shape {position.shape}")
    return field.acceleration(position)
