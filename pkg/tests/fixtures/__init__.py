"""
Shared fixtures for orbita tests.
"""

import math
from pathlib import Path
from typing import Iterable, Tuple

from orbita.core import SimConfig
from orbita.dynamics import State2D
from orbita.geometry import EllipseGeom, make_ellipse
from orbita.inference import KeplerMotionSpec

# The 3-4-5 ellipse keeps b exact in floating point.
STANDARD_A = 5.0
STANDARD_C = 3.0
STANDARD_T = 1.0

# C = 1, r0 = 1, v0 = 1.2 gives e = 0.44, p = 1.44.
ECCENTRIC_SPEED = 1.2


def standard_ellipse() -> EllipseGeom:
    """The a=5, c=3 (b=4) ellipse."""
    return make_ellipse(STANDARD_A, STANDARD_C)


def standard_spec(T: float = STANDARD_T) -> KeplerMotionSpec:
    """Keplerian motion on the standard ellipse."""
    return KeplerMotionSpec(ell=standard_ellipse(), T=T)


def circular_state() -> State2D:
    """Unit circular orbit for C = 1."""
    return State2D(pos=(1.0, 0.0), vel=(0.0, 1.0))


def eccentric_state() -> State2D:
    """Periapsis state of the e = 0.44 orbit for C = 1."""
    return State2D(pos=(1.0, 0.0), vel=(0.0, ECCENTRIC_SPEED))


def coarse_config(**overrides) -> SimConfig:
    """Integrator settings with fewer output samples for finite-difference checks."""
    values = {"n_output": 401}
    values.update(overrides)
    return SimConfig(**values)


def write_profile(path: Path, rows: Iterable[Tuple[float, float]], header: bool = True) -> Path:
    """Write a radius,density CSV profile."""
    lines = ["radius,density"] if header else []
    lines.extend(f"{r!r},{rho!r}" for r, rho in rows)
    path.write_text("\n".join(lines) + "\n")
    return path


def uniform_ball_density(mass: float = 1.0, radius: float = 1.0) -> float:
    """Volume density of a uniform ball of the given mass."""
    return mass / (4.0 / 3.0 * math.pi * radius ** 3)
