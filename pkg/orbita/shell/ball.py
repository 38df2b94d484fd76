"""
Layered solid balls for Orbita.

A spherically symmetric ball is cut into concentric layers (midpoint rule over
radius); each layer is replaced by a thin shell at its mid radius carrying the
layer's exact volume mass, and the shell attractions are summed.
"""

import logging
import math
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, model_validator

from orbita.core.parallel import ParallelManager
from orbita.shell.quadrature import (
    DEFAULT_MESH_LEVEL,
    QuadratureResult,
    ShellError,
    ShellSpec,
    _offset,
    _require_exterior,
    shell_force_quadrature,
)

logger = logging.getLogger("orbita.shell.ball")

DEFAULT_LAYERS = 64


class ProfileError(ShellError):
    """Exception raised for invalid radial density profiles."""
    pass


class DensityProfile(BaseModel):
    """
    Radial density samples, linearly interpolated and held constant beyond
    the sampled range.

    Attributes:
        radii: Strictly increasing, non-negative radii
        density: Non-negative volume densities at ``radii``
    """

    model_config = ConfigDict(frozen=True)

    radii: Tuple[float, ...]
    density: Tuple[float, ...]

    @model_validator(mode="after")
    def _check(self) -> "DensityProfile":
        if len(self.radii) != len(self.density):
            raise ProfileError(f"Got {len(self.radii)} radii but {len(self.density)} densities")
        if len(self.radii) == 0:
            raise ProfileError("Density profile is empty")
        radii = np.asarray(self.radii)
        density = np.asarray(self.density)
        if not (np.all(np.isfinite(radii)) and np.all(np.isfinite(density))):
            raise ProfileError("Density profile contains non-finite values")
        if radii[0] < 0.0 or np.any(np.diff(radii) <= 0.0):
            raise ProfileError("Profile radii must be non-negative and strictly increasing")
        if np.any(density < 0.0):
            raise ProfileError(f"Negative density in profile: min {density.min()}")
        return self

    def density_at(self, r) -> np.ndarray:
        return np.interp(r, self.radii, self.density)


def uniform_profile(density: float) -> DensityProfile:
    """Constant density profile."""
    return DensityProfile(radii=(0.0,), density=(density,))


def load_density_profile(path: Union[str, Path]) -> DensityProfile:
    """
    Read a two-column (radius, density) CSV file; a header row is optional.

    Raises:
        ProfileError: If the file cannot be read or the profile is invalid
    """
    try:
        frame = pd.read_csv(path, header=None, comment="#", skipinitialspace=True)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        logger.error(f"Error reading density profile {path}: {str(e)}")
        raise ProfileError(f"Cannot read density profile {path}: {str(e)}") from e

    if frame.shape[1] != 2:
        raise ProfileError(f"Density profile must have two columns, found {frame.shape[1]}")
    numeric = frame.apply(pd.to_numeric, errors="coerce")
    if numeric.iloc[0].isna().all():
        numeric = numeric.iloc[1:]
    if numeric.empty or numeric.isna().any().any():
        raise ProfileError(f"Density profile {path} contains non-numeric entries")

    profile = DensityProfile(
        radii=tuple(float(r) for r in numeric.iloc[:, 0]),
        density=tuple(float(rho) for rho in numeric.iloc[:, 1]),
    )
    logger.info(f"Loaded density profile with {len(profile.radii)} samples from {path}")
    return profile


def _layers(profile: DensityProfile, R_outer: float, layers: int) -> Tuple[np.ndarray, np.ndarray]:
    """Mid radii and exact-volume masses of the layers."""
    if not R_outer > 0.0:
        raise ProfileError(f"Outer radius must be positive, got {R_outer}")
    if layers < 1:
        raise ProfileError(f"Layer count must be positive, got {layers}")
    edges = np.linspace(0.0, R_outer, layers + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    volume = (4.0 * math.pi / 3.0) * (edges[1:] ** 3 - edges[:-1] ** 3)
    return mid, profile.density_at(mid) * volume


def ball_mass(profile: DensityProfile, R_outer: float, layers: int = DEFAULT_LAYERS) -> float:
    """Total mass under the same layering as ``solid_ball_force``."""
    _, masses = _layers(profile, R_outer, layers)
    return float(np.sum(masses))


def solid_ball_force(
    profile: DensityProfile,
    R_outer: float,
    P,
    m1: float = 1.0,
    G: float = 1.0,
    mesh_level: int = DEFAULT_MESH_LEVEL,
    layers: int = DEFAULT_LAYERS,
    center=(0.0, 0.0, 0.0),
    manager: Optional[ParallelManager] = None,
) -> QuadratureResult:
    """
    Attraction of a layered solid ball on a point mass at P.

    Layers with zero mass contribute nothing; the layer quadratures run
    through the parallel manager and are summed in layer order.

    Raises:
        ExteriorPointError: If P is not outside R_outer
        ProfileError: For an invalid outer radius or layer count
    """
    outer = ShellSpec(R=R_outer, rho=1.0, center=center)
    _, d = _offset(outer, P)
    _require_exterior(outer, d)
    mid, masses = _layers(profile, R_outer, layers)

    shells = [
        ShellSpec(R=float(r), rho=float(m) / (4.0 * math.pi * r * r), center=center)
        for r, m in zip(mid, masses)
        if m > 0.0
    ]
    if not shells:
        logger.info("Density profile carries no mass; force is zero")
        return QuadratureResult(
            force=(0.0, 0.0, 0.0), mesh_level=mesh_level, est_error=0.0, axial=0.0, transverse=0.0, n_nodes=0
        )

    manager = manager or ParallelManager()
    results = manager.map(
        lambda shell: shell_force_quadrature(shell, P, m1, G, mesh_level=mesh_level),
        shells,
        description="Solid ball layers",
    )

    force = np.sum(np.array([res.force for res in results]), axis=0)
    axial = float(sum(res.axial for res in results))
    transverse = float(np.linalg.norm(force - (-axial) * (np.asarray(P, dtype=float) - outer.origin) / d))
    magnitude = float(np.linalg.norm(force))
    abs_error = sum(res.est_error * res.magnitude for res in results)
    logger.info(f"Solid ball force over {len(shells)} layers: {magnitude:.17g}")
    return QuadratureResult(
        force=(float(force[0]), float(force[1]), float(force[2])),
        mesh_level=mesh_level,
        est_error=abs_error / magnitude if magnitude > 0.0 else 0.0,
        axial=axial,
        transverse=transverse,
        n_nodes=sum(res.n_nodes for res in results),
    )
