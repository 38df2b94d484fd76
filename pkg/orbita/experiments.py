"""
Experiments for Orbita.

Each ``cmd_*`` function runs one named experiment over the numerical modules
and returns a Report whose verdicts compare recorded numbers against declared
tolerances. Invalid input surfaces as the module's own exception.
"""

import itertools
import logging
import math
import time
from typing import List, Optional, Sequence, Tuple

import numpy as np

from orbita.core import ParallelManager, SimConfig
from orbita.dynamics import (
    CentralField,
    DynamicsError,
    State2D,
    TwoBodyState,
    barycenter_drift,
    barycentric_fields,
    barycentric_trajectory,
    initial_relative_state,
    integrate,
    relative_field,
    relative_trajectory,
    specific_energy,
    total_angular_momentum,
    total_momentum,
    trajectory_accelerations,
    two_body_integrate,
)
from orbita.geometry import (
    conic_classify,
    curvature_parametric,
    focal_angles,
    make_ellipse,
    param_to_focal_angle,
    point_and_focal_distances,
    radius_at,
    tangent_data,
    tangent_parallel_point,
)
from orbita.inference import (
    EstimateMethod,
    KeplerMotionSpec,
    accel_via_binet,
    accel_via_curvature,
    accel_via_hodograph,
    circle_through_center,
    estimate_from_samples,
    force_from_orbit,
    kepler_orbit_q,
    sample_force,
    sample_thetas,
    velocity_hodograph,
)
from orbita.reporting import Report
from orbita.shell import (
    DEFAULT_LAYERS,
    NEAR_SURFACE_MARGIN,
    NEAR_SURFACE_MESH_LEVEL,
    ShellSpec,
    ball_mass,
    inversion_ratios,
    load_density_profile,
    point_mass_force,
    projected_solid_angle,
    shell_force_quadrature,
    solid_ball_force,
)
from orbita.solver import (
    binet_constants,
    binet_solve,
    conic_fit_residual,
    find_period,
    orbit_period,
    roundtrip_deviation,
    solve_kepler,
)

logger = logging.getLogger("orbita.experiments")

GEOMETRY_TOL = 1e-12
CURVATURE_TOL = 1e-10
EXPONENT_TOL = 1e-9
COEFFICIENT_TOL = 1e-9
METHOD_AGREEMENT_TOL = 1e-11
TRAJECTORY_EXPONENT_TOL = 1e-6
ROUNDTRIP_TOL = 1e-6
PERIOD_TOL = 1e-8
BINET_AGREEMENT_TOL = 1e-12
ENERGY_TOL = 1e-9
SHELL_TOL = 1e-6
SYMMETRY_TOL = 1e-10
SOLID_ANGLE_TOL = 1e-10
BALL_TOL = 1e-5
THIRD_LAW_TOL = 1e-10
THIRD_LAW_PERIOD_TOL = 1e-9
BARYCENTER_TOL = 1e-10
CONSERVATION_TOL = 1e-10
CONIC_FIT_TOL = 1e-8
BINET_FORCE_TOL = 1e-6
CONVERGENCE_ORDER_MIN = 2.0
CONVERGENCE_REFINEMENTS = 4
ROUNDOFF_FLOOR = 1e-13

INVERSION_SAMPLES = 1000
MAX_TABLE_ROWS = 201


def _rel(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


def _stride(n: int) -> int:
    return max(1, math.ceil(n / MAX_TABLE_ROWS))


def _convergence_order(errors: Sequence[float]) -> Optional[float]:
    """Smallest log2 error ratio over the first refinements above the roundoff floor."""
    orders = [
        math.log2(coarse / fine)
        for coarse, fine in zip(errors, errors[1:])
        if coarse > ROUNDOFF_FLOOR and fine > ROUNDOFF_FLOOR
    ]
    return min(orders[:CONVERGENCE_REFINEMENTS]) if orders else None


def _finish(report: Report, start: float) -> Report:
    report.wall_time = time.perf_counter() - start
    statuses = ", ".join(f"{v.name}={v.evaluate().value}" for v in report.verdicts)
    logger.info(f"Experiment {report.experiment} finished in {report.wall_time:.3f}s: {statuses}")
    return report


def cmd_ellipse(a: float, c: float, samples: int = 360, tol_scale: float = 1.0) -> Report:
    """
    Focal geometry table of an ellipse.

    Columns t, theta, r, r1, r2, d1, d2, kappa_focal, kappa_param on a
    uniform grid of parametric angles, with verdicts for the focal sum,
    d1 d2 = b^2, the optical property, |PK| = a, the polar equation and the
    agreement of the two curvature formulas.
    """
    start = time.perf_counter()
    ell = make_ellipse(a, c)
    report = Report(
        experiment="ellipse",
        inputs={"a": a, "c": c, "samples": samples},
        columns=["t", "theta", "r", "r1", "r2", "d1", "d2", "kappa_focal", "kappa_param"],
        summary={"b": ell.b, "e": ell.e, "p": ell.semi_latus_rectum},
    )

    b_sq = ell.b * ell.b
    focal_sum, d_product, optical, pk, polar, curvature = [], [], [], [], [], []
    for t in 2.0 * math.pi * np.arange(samples) / samples:
        t = float(t)
        theta = param_to_focal_angle(ell, t)
        r = radius_at(ell, theta)
        point, r1, r2 = point_and_focal_distances(ell, t)
        data = tangent_data(ell, t)
        eps1, eps2 = focal_angles(ell, t)
        kappa_param = curvature_parametric(ell, t)
        k_point = tangent_parallel_point(ell, t)

        focal_sum.append(_rel(r1 + r2, 2.0 * a))
        d_product.append(_rel(data.d1 * data.d2, b_sq))
        optical.append(abs(eps1 - eps2))
        pk.append(_rel(float(np.hypot(*(k_point - point))), a))
        polar.append(_rel(r, r1))
        curvature.append(_rel(data.kappa, kappa_param))
        report.rows.append([t, theta, r, r1, r2, data.d1, data.d2, data.kappa, kappa_param])

    report.add_verdict("focal_sum_error", max(focal_sum), GEOMETRY_TOL, tol_scale=tol_scale)
    report.add_verdict("d1_d2_error", max(d_product), GEOMETRY_TOL, tol_scale=tol_scale)
    report.add_verdict("optical_angle_error", max(optical), GEOMETRY_TOL, tol_scale=tol_scale)
    report.add_verdict("pk_error", max(pk), GEOMETRY_TOL, tol_scale=tol_scale)
    report.add_verdict("polar_radius_error", max(polar), GEOMETRY_TOL, tol_scale=tol_scale)
    report.add_verdict("curvature_error", max(curvature), CURVATURE_TOL, tol_scale=tol_scale)
    report.add_verdict(
        "far_vertex_curvature_error", _rel(curvature_parametric(ell, 0.0), a / b_sq), GEOMETRY_TOL, tol_scale=tol_scale
    )
    report.add_verdict(
        "minor_vertex_curvature_error",
        _rel(curvature_parametric(ell, 0.5 * math.pi), ell.b / (a * a)),
        GEOMETRY_TOL,
        tol_scale=tol_scale,
    )
    return _finish(report, start)


def _trajectory_oracle(spec: KeplerMotionSpec, cfg: SimConfig) -> float:
    """Fitted exponent of finite-difference accelerations along one numerical period."""
    ell = spec.ell
    s0 = State2D(pos=(ell.a + ell.c, 0.0), vel=tuple(float(v) for v in velocity_hodograph(spec, 0.0)))
    traj = integrate(CentralField(C=spec.coefficient, n=-2.0), s0, spec.T, cfg)
    r, accel = trajectory_accelerations(traj)
    return estimate_from_samples(r, accel, EstimateMethod.TRAJECTORY).fitted_exponent


def cmd_infer(
    a: float,
    c: float,
    T: float,
    samples: int = 64,
    cfg: Optional[SimConfig] = None,
    tol_scale: float = 1.0,
) -> Report:
    """
    Recover the force law of Keplerian motion three ways and fit it.

    Rows hold |a| from the hodograph, curvature and Binet routes at each
    sampled focal angle. Circles carry a single radius, so the exponent fit
    is skipped with a notice and N/A verdicts.
    """
    start = time.perf_counter()
    cfg = cfg or SimConfig()
    spec = KeplerMotionSpec(ell=make_ellipse(a, c), T=T)
    report = Report(
        experiment="infer",
        inputs={"a": a, "c": c, "T": T, "samples": samples},
        columns=["theta", "r", "accel_hodograph", "accel_curvature", "accel_binet", "accel_r2"],
        summary={"k": spec.k, "reference_coefficient": spec.coefficient},
    )

    disagreement = 0.0
    for theta in sample_thetas(samples):
        theta = float(theta)
        r = radius_at(spec.ell, theta)
        values = [
            float(np.linalg.norm(accel_via_hodograph(spec, theta))),
            accel_via_curvature(spec, theta),
            accel_via_binet(spec, theta),
        ]
        for x, y in itertools.combinations(values, 2):
            disagreement = max(disagreement, _rel(x, y))
        report.rows.append([theta, r, *values, values[0] * r * r])
    report.add_verdict("method_disagreement", disagreement, METHOD_AGREEMENT_TOL, tol_scale=tol_scale)

    if spec.ell.e == 0.0:
        report.notices.append("circle: all samples share one radius, exponent fit skipped")
        report.add_verdict("exponent_error", None, EXPONENT_TOL, tol_scale=tol_scale)
        report.add_verdict("coefficient_error", None, COEFFICIENT_TOL, tol_scale=tol_scale)
        return _finish(report, start)

    fits = {method: sample_force(spec, method, samples) for method in
            (EstimateMethod.HODOGRAPH, EstimateMethod.CURVATURE, EstimateMethod.BINET)}
    primary = fits[EstimateMethod.HODOGRAPH]
    report.summary["fitted_exponent"] = primary.fitted_exponent
    report.summary["fitted_coefficient"] = primary.fitted_coefficient
    for method, fit in fits.items():
        report.summary[f"exponent_{method.value}"] = fit.fitted_exponent

    exponent_error = max(abs(fit.fitted_exponent + 2.0) for fit in fits.values())
    coefficient_error = max(_rel(fit.fitted_coefficient, spec.coefficient) for fit in fits.values())
    report.add_verdict("exponent_error", exponent_error, EXPONENT_TOL, tol_scale=tol_scale)
    report.add_verdict("coefficient_error", coefficient_error, COEFFICIENT_TOL, tol_scale=tol_scale)

    trajectory_exponent = _trajectory_oracle(spec, cfg)
    report.summary["exponent_trajectory"] = trajectory_exponent
    report.add_verdict(
        "trajectory_exponent_error", abs(trajectory_exponent + 2.0), TRAJECTORY_EXPONENT_TOL, tol_scale=tol_scale
    )
    return _finish(report, start)


def cmd_solve(
    C: float,
    pos: Sequence[float],
    vel: Sequence[float],
    cfg: Optional[SimConfig] = None,
    tol_scale: float = 1.0,
) -> Report:
    """
    Solve the Kepler problem for an initial state and check it numerically.

    Rows sample the numerical trajectory next to the closed-form radius.
    Bound orbits are followed for one period, open ones for the time the
    initial speed needs to cover one initial circumference.
    """
    start = time.perf_counter()
    cfg = cfg or SimConfig()
    field = CentralField(C=C, n=-2.0)
    s0 = State2D(pos=(float(pos[0]), float(pos[1])), vel=(float(vel[0]), float(vel[1])))
    sol = solve_kepler(field, s0)
    orbit = sol.orbit
    report = Report(
        experiment="solve",
        inputs={"C": C, "pos": list(s0.pos), "vel": list(s0.vel)},
        columns=["t", "x", "y", "r", "r_conic"],
        summary={
            "type": conic_classify(orbit).value,
            "p": orbit.p,
            "e": orbit.e,
            "omega": orbit.omega,
            "sense": orbit.sense,
            "repulsive": orbit.repulsive,
            "energy": sol.energy,
            "periapsis": orbit.periapsis,
        },
    )

    if sol.bound:
        period = orbit_period(orbit, C)
        scale = orbit.semi_major_axis
        report.summary["a"] = scale
        report.summary["period"] = period
        duration = period
    else:
        scale = orbit.p
        duration = 2.0 * math.pi * s0.radius / float(np.hypot(*s0.velocity))
        report.notices.append(f"{conic_classify(orbit).value} orbit: no period, followed for {duration:.6g}")

    traj = integrate(field, s0, duration, cfg)
    deviation = roundtrip_deviation(sol, traj)
    report.add_verdict("roundtrip_deviation", deviation / scale, ROUNDTRIP_TOL, tol_scale=tol_scale)

    energies = np.array([specific_energy(field, traj.state(i)) for i in range(len(traj))])
    energy_scale = max(abs(sol.energy), abs(C) / s0.radius)
    report.add_verdict(
        "energy_drift", float(np.max(np.abs(energies - sol.energy))) / energy_scale, ENERGY_TOL, tol_scale=tol_scale
    )

    if sol.bound:
        numeric = find_period(field, s0, cfg)
        report.summary["period_numeric"] = numeric
        report.add_verdict("period_error", _rel(numeric, report.summary["period"]), PERIOD_TOL, tol_scale=tol_scale)

    if C > 0.0:
        from_binet = binet_solve(*binet_constants(C, s0), sense=orbit.sense)
        agreement = max(_rel(from_binet.p, orbit.p), abs(from_binet.e - orbit.e))
        report.add_verdict("binet_agreement", agreement, BINET_AGREEMENT_TOL, tol_scale=tol_scale)
    else:
        report.add_verdict("binet_agreement", None, BINET_AGREEMENT_TOL, tol_scale=tol_scale)

    for i in range(0, len(traj), _stride(len(traj))):
        x, y = traj.pos[i]
        report.rows.append(
            [float(traj.t[i]), float(x), float(y), float(traj.radius[i]), orbit.radius(math.atan2(y, x))]
        )
    return _finish(report, start)


def cmd_shell(
    R: float,
    rho: float,
    d: float,
    mesh: int = 6,
    G: float = 1.0,
    m1: float = 1.0,
    profile: Optional[str] = None,
    layers: int = DEFAULT_LAYERS,
    seed: int = 0,
    tol_scale: float = 1.0,
    manager: Optional[ParallelManager] = None,
) -> Report:
    """
    Shell attraction on an exterior point against G m1 m2 / d^2.

    Rows tabulate the refinement levels up to ``mesh``. With a density
    profile, a solid ball of outer radius R is added and compared with its
    point-mass value.
    """
    start = time.perf_counter()
    shell = ShellSpec(R=R, rho=rho)
    P = (d, 0.0, 0.0)
    result = shell_force_quadrature(shell, P, m1, G, mesh_level=mesh)
    exact = point_mass_force(G, m1, shell.mass, d)
    report = Report(
        experiment="shell",
        inputs={"R": R, "rho": rho, "d": d, "mesh": mesh, "G": G, "m1": m1, "profile": profile, "layers": layers},
        columns=["level", "n_nodes", "axial", "transverse", "rel_error", "est_error"],
        summary={"mass": shell.mass, "force": result.axial, "point_mass_force": exact, "est_error": result.est_error},
    )

    first = 1 if d >= R * (1.0 + NEAR_SURFACE_MARGIN) else NEAR_SURFACE_MESH_LEVEL
    levels = list(range(first, mesh + 1))
    manager = manager or ParallelManager()
    results = manager.map(
        lambda level: shell_force_quadrature(shell, P, m1, G, mesh_level=level), levels, description="Shell levels"
    )
    for level, res in zip(levels, results):
        report.rows.append([level, res.n_nodes, res.axial, res.transverse, _rel(res.axial, exact), res.est_error])

    order = _convergence_order([row[4] for row in report.rows])
    report.summary["convergence_order"] = order
    report.add_verdict("convergence_order", order, CONVERGENCE_ORDER_MIN, comparison="ge")

    report.add_verdict("force_error", _rel(result.axial, exact), SHELL_TOL, tol_scale=tol_scale)
    report.add_verdict("transverse_ratio", result.transverse / result.axial, SYMMETRY_TOL, tol_scale=tol_scale)

    rng = np.random.default_rng(seed)
    directions = rng.normal(size=(INVERSION_SAMPLES, 3))
    points = R * directions / np.linalg.norm(directions, axis=1)[:, None]
    ratio_error, angle_error = 0.0, 0.0
    for Q in points:
        ratio, angle_q, angle_p = inversion_ratios(shell, P, Q)
        ratio_error = max(ratio_error, _rel(ratio, R / d))
        angle_error = max(angle_error, abs(angle_q - angle_p))
    report.add_verdict("inversion_ratio_error", ratio_error, GEOMETRY_TOL, tol_scale=tol_scale)
    report.add_verdict("inversion_angle_error", angle_error, GEOMETRY_TOL, tol_scale=tol_scale)

    solid_angle = projected_solid_angle(shell, P, mesh)
    report.summary["projected_solid_angle"] = solid_angle
    report.add_verdict("solid_angle_error", _rel(solid_angle, 4.0 * math.pi), SOLID_ANGLE_TOL, tol_scale=tol_scale)

    if profile is not None:
        density = load_density_profile(profile)
        ball = solid_ball_force(density, R, P, m1, G, mesh_level=mesh, layers=layers, manager=manager)
        mass = ball_mass(density, R, layers)
        report.summary["ball_mass"] = mass
        report.summary["ball_force"] = ball.axial
        if mass > 0.0:
            report.add_verdict(
                "ball_force_error", _rel(ball.axial, point_mass_force(G, m1, mass, d)), BALL_TOL, tol_scale=tol_scale
            )
        else:
            report.add_verdict("ball_force_error", ball.magnitude, BALL_TOL, tol_scale=tol_scale)
    return _finish(report, start)


def _periapsis_state(C: float, a: float, ecc: float) -> State2D:
    r_p = a * (1.0 - ecc)
    return State2D(pos=(r_p, 0.0), vel=(0.0, math.sqrt(C * (1.0 + ecc) / r_p)))


def cmd_kepler3(
    C: float,
    a_list: Sequence[float],
    ecc: float = 0.3,
    cfg: Optional[SimConfig] = None,
    tol_scale: float = 1.0,
    manager: Optional[ParallelManager] = None,
) -> Report:
    """
    Kepler's third law from simulation.

    Each semi-major axis is simulated from periapsis with eccentricity
    ``ecc``; its period is found numerically and (2a)^3 / T^2 tabulated.
    """
    start = time.perf_counter()
    cfg = cfg or SimConfig()
    field = CentralField(C=C, n=-2.0)
    manager = manager or ParallelManager()
    report = Report(
        experiment="kepler3",
        inputs={"C": C, "a": list(a_list), "ecc": ecc},
        columns=["a", "period", "period_closed_form", "third_law_constant"],
    )

    periods = manager.map(
        lambda a: find_period(field, _periapsis_state(C, a, ecc), cfg), list(a_list), description="Kepler orbits"
    )
    constants, period_errors = [], []
    for a, period in zip(a_list, periods):
        closed = 2.0 * math.pi * math.sqrt(a ** 3 / C)
        constant = (2.0 * a) ** 3 / period ** 2
        constants.append(constant)
        period_errors.append(_rel(period, closed))
        report.rows.append([a, period, closed, constant])

    mean = float(np.mean(constants))
    report.summary["third_law_constant"] = mean
    report.summary["expected_constant"] = 8.0 * C / (4.0 * math.pi ** 2)
    report.add_verdict("constant_spread", (max(constants) - min(constants)) / mean, THIRD_LAW_TOL, tol_scale=tol_scale)
    report.add_verdict("period_error", max(period_errors), THIRD_LAW_PERIOD_TOL, tol_scale=tol_scale)
    return _finish(report, start)


def symmetric_binary(G: float = 1.0, mass: float = 1.0, separation: float = 1.0) -> TwoBodyState:
    """Equal masses on a circular relative orbit with the barycenter at rest at the origin."""
    speed = 0.5 * math.sqrt(2.0 * G * mass / separation)
    half = 0.5 * separation
    return TwoBodyState(
        mass1=mass,
        mass2=mass,
        state1=State2D(pos=(-half, 0.0), vel=(0.0, -speed)),
        state2=State2D(pos=(half, 0.0), vel=(0.0, speed)),
        G=G,
    )


def cmd_twobody(
    G: float = 1.0,
    m1: float = 1.0,
    m2: float = 1.0,
    states: Optional[Tuple[State2D, State2D]] = None,
    periods: float = 1.0,
    cfg: Optional[SimConfig] = None,
    tol_scale: float = 1.0,
) -> Report:
    """
    Two bodies under mutual gravitation, reduced to one-body problems.

    Without explicit states the symmetric equal-mass circular binary is run.
    Verdicts cover barycenter motion, momentum and angular momentum, the
    Keplerian fit of the relative orbit (C = G (m1 + m2)) and of each body's
    orbit about the barycenter.
    """
    start = time.perf_counter()
    cfg = cfg or SimConfig()
    if states is None:
        if m1 != m2:
            raise DynamicsError(f"Explicit states are required for unequal masses ({m1}, {m2})")
        tb = symmetric_binary(G, m1)
    else:
        tb = TwoBodyState(mass1=m1, mass2=m2, state1=states[0], state2=states[1], G=G)

    rel0 = initial_relative_state(tb)
    rel_field = relative_field(tb)
    sol = solve_kepler(rel_field, rel0)
    report = Report(
        experiment="twobody",
        inputs={
            "G": tb.G,
            "m1": tb.mass1,
            "m2": tb.mass2,
            "pos1": list(tb.state1.pos),
            "vel1": list(tb.state1.vel),
            "pos2": list(tb.state2.pos),
            "vel2": list(tb.state2.vel),
            "periods": periods,
        },
        columns=["t", "x1", "y1", "x2", "y2", "x_cm", "y_cm"],
        summary={"relative_C": rel_field.C, "relative_p": sol.orbit.p, "relative_e": sol.orbit.e},
    )
    if sol.bound:
        period = orbit_period(sol.orbit, rel_field.C)
        report.summary["relative_period"] = period
        duration = periods * period
    else:
        duration = 2.0 * math.pi * rel0.radius / float(np.hypot(*rel0.velocity))
        report.notices.append(f"relative orbit is open; followed for {duration:.6g}")

    traj1, traj2 = two_body_integrate(tb, duration, cfg)

    drift = barycenter_drift(tb, traj1, traj2) / tb.separation
    report.add_verdict("barycenter_drift", drift, BARYCENTER_TOL, tol_scale=tol_scale)

    momentum = total_momentum(tb, traj1, traj2)
    momentum_scale = tb.mass1 * float(np.hypot(*tb.state1.vel)) + tb.mass2 * float(np.hypot(*tb.state2.vel))
    report.add_verdict(
        "momentum_drift",
        float(np.max(np.hypot(*(momentum - momentum[0]).T))) / momentum_scale,
        CONSERVATION_TOL,
        tol_scale=tol_scale,
    )
    angular = total_angular_momentum(tb, traj1, traj2)
    angular_scale = float(
        np.abs(tb.mass1 * traj1.angular_momentum[0]) + np.abs(tb.mass2 * traj2.angular_momentum[0])
    ) or 1.0
    report.add_verdict(
        "angular_momentum_drift", float(np.max(np.abs(angular - angular[0]))) / angular_scale,
        CONSERVATION_TOL, tol_scale=tol_scale,
    )

    relative = relative_trajectory(tb, traj1, traj2)
    report.add_verdict(
        "relative_conic_residual", conic_fit_residual(relative, rel_field.C), CONIC_FIT_TOL, tol_scale=tol_scale
    )

    field1, field2 = barycentric_fields(tb)
    residuals = [
        conic_fit_residual(barycentric_trajectory(tb, traj1, traj1, traj2), field1.C),
        conic_fit_residual(barycentric_trajectory(tb, traj2, traj1, traj2), field2.C),
    ]
    report.add_verdict("barycentric_conic_residual", max(residuals), CONIC_FIT_TOL, tol_scale=tol_scale)

    path = (tb.mass1 * traj1.pos + tb.mass2 * traj2.pos) / tb.total_mass
    for i in range(0, len(traj1), _stride(len(traj1))):
        report.rows.append(
            [float(traj1.t[i]), *map(float, traj1.pos[i]), *map(float, traj2.pos[i]), *map(float, path[i])]
        )
    return _finish(report, start)


def cmd_binet(
    a: float = 5.0,
    c: float = 3.0,
    T: float = 1.0,
    R: float = 1.0,
    samples: int = 401,
    tol_scale: float = 1.0,
) -> Report:
    """
    Force laws implied by sampled orbits through the Binet equation.

    A Kepler ellipse yields the inverse-square law with coefficient
    4 pi^2 a^3 / T^2; a circle through the center, traversed with the same
    areal constant, yields the inverse-fifth-power law with coefficient
    8 k^2 R^2.
    """
    start = time.perf_counter()
    spec = KeplerMotionSpec(ell=make_ellipse(a, c), T=T)
    report = Report(
        experiment="binet",
        inputs={"a": a, "c": c, "T": T, "R": R, "samples": samples},
        columns=["orbit", "theta", "r", "force"],
    )

    theta_ellipse = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    ellipse_fit = force_from_orbit(theta_ellipse, kepler_orbit_q(spec.ell, theta_ellipse), spec.k)
    theta_circle = np.linspace(-1.0, 1.0, samples)
    circle_fit = force_from_orbit(theta_circle, circle_through_center(R, theta_circle), spec.k)

    for name, theta, fit in (("ellipse", theta_ellipse, ellipse_fit), ("circle", theta_circle, circle_fit)):
        stride = _stride(len(fit.r))
        for th, r, f in zip(theta[2:-2][::stride], fit.r[::stride], fit.accel[::stride]):
            report.rows.append([name, float(th), float(r), float(f)])

    report.summary.update(
        {
            "ellipse_exponent": ellipse_fit.fitted_exponent,
            "ellipse_coefficient": ellipse_fit.fitted_coefficient,
            "circle_exponent": circle_fit.fitted_exponent,
            "circle_coefficient": circle_fit.fitted_coefficient,
        }
    )
    report.add_verdict(
        "ellipse_exponent_error", abs(ellipse_fit.fitted_exponent + 2.0), BINET_FORCE_TOL, tol_scale=tol_scale
    )
    report.add_verdict(
        "ellipse_coefficient_error", _rel(ellipse_fit.fitted_coefficient, spec.coefficient), BINET_FORCE_TOL,
        tol_scale=tol_scale,
    )
    report.add_verdict(
        "circle_exponent_error", abs(circle_fit.fitted_exponent + 5.0), BINET_FORCE_TOL, tol_scale=tol_scale
    )
    report.add_verdict(
        "circle_coefficient_error", _rel(circle_fit.fitted_coefficient, 8.0 * spec.k ** 2 * R ** 2), BINET_FORCE_TOL,
        tol_scale=tol_scale,
    )
    return _finish(report, start)


EXPERIMENTS: List[str] = ["ellipse", "infer", "solve", "shell", "kepler3", "twobody", "binet"]
