"""Solver module for Orbita."""

from orbita.solver.kepler import (
    AdmissibleRangeError,
    DegenerateOrbitError,
    KeplerSolution,
    SolverError,
    UnboundOrbitError,
    binet_constants,
    binet_solve,
    closest_approach,
    conic_fit_residual,
    eccentricity_vector,
    find_period,
    orbit_period,
    predict_position,
    roundtrip_deviation,
    solve_kepler,
    vis_viva_semi_major_axis,
)

__all__ = [
    "AdmissibleRangeError",
    "DegenerateOrbitError",
    "KeplerSolution",
    "SolverError",
    "UnboundOrbitError",
    "binet_constants",
    "binet_solve",
    "closest_approach",
    "conic_fit_residual",
    "eccentricity_vector",
    "find_period",
    "orbit_period",
    "predict_position",
    "roundtrip_deviation",
    "solve_kepler",
    "vis_viva_semi_major_axis",
]
