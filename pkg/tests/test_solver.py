"""
Tests for the Kepler solver.
"""

import math
import unittest

import numpy as np
import pytest

from orbita.dynamics import CentralField, State2D, integrate
from orbita.geometry import ConicOrbit, ConicType, conic_classify
from orbita.solver import (
    AdmissibleRangeError,
    DegenerateOrbitError,
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
from tests.fixtures import circular_state, eccentric_state

UNIT_FIELD = CentralField(C=1.0)
ECCENTRIC_A = 1.44 / (1.0 - 0.44 ** 2)


class TestSolveKepler(unittest.TestCase):
    """Test the closed-form solution from an initial state."""

    def test_circular(self):
        """Test the unit circular orbit."""
        sol = solve_kepler(UNIT_FIELD, circular_state())
        self.assertEqual(sol.orbit.e, 0.0)
        self.assertEqual(sol.orbit.p, 1.0)
        self.assertEqual(sol.orbit.omega, 0.0)
        self.assertEqual(conic_classify(sol.orbit), ConicType.CIRCLE)
        self.assertTrue(sol.bound)

    def test_eccentric(self):
        """Test e = 0.44, p = 1.44 with periapsis at the start."""
        sol = solve_kepler(UNIT_FIELD, eccentric_state())
        self.assertAlmostEqual(sol.k, 1.2, places=15)
        self.assertAlmostEqual(sol.orbit.e, 0.44, places=12)
        self.assertAlmostEqual(sol.orbit.p, 1.44, places=12)
        self.assertAlmostEqual(sol.orbit.omega, 0.0, places=15)
        self.assertAlmostEqual(sol.orbit.semi_major_axis, 1.785714285714, places=10)
        self.assertAlmostEqual(sol.energy, -0.28, places=15)
        self.assertEqual(conic_classify(sol.orbit), ConicType.ELLIPSE)
        self.assertEqual(sol.orbit.sense, 1)

    def test_matches_eccentricity_vector_and_vis_viva(self):
        """Test agreement with the textbook invariants."""
        state = State2D(pos=(0.3, -1.1), vel=(0.7, 0.4))
        sol = solve_kepler(UNIT_FIELD, state)
        e_vec = eccentricity_vector(1.0, state)
        self.assertAlmostEqual(sol.orbit.e, float(np.hypot(*e_vec)), places=12)
        self.assertAlmostEqual(sol.orbit.omega, math.atan2(e_vec[1], e_vec[0]), places=12)
        self.assertAlmostEqual(
            sol.orbit.semi_major_axis, vis_viva_semi_major_axis(1.0, state), delta=1e-12 * sol.orbit.semi_major_axis
        )

    def test_initial_radius_reproduced(self):
        """Test that r(theta0) equals the initial radius."""
        state = State2D(pos=(-0.4, 0.9), vel=(-0.8, -0.5))
        sol = solve_kepler(UNIT_FIELD, state)
        pos = predict_position(sol, math.atan2(0.9, -0.4))
        np.testing.assert_allclose(pos, [-0.4, 0.9], atol=1e-13)

    def test_clockwise(self):
        """Test that negative angular momentum flips the sense only."""
        sol = solve_kepler(UNIT_FIELD, State2D(pos=(1.0, 0.0), vel=(0.0, -1.2)))
        self.assertEqual(sol.orbit.sense, -1)
        self.assertAlmostEqual(sol.orbit.e, 0.44, places=12)
        self.assertAlmostEqual(sol.orbit.omega, 0.0, places=15)

    def test_escape_speed_is_parabolic(self):
        """Test e = 1 at the escape speed."""
        sol = solve_kepler(UNIT_FIELD, State2D(pos=(1.0, 0.0), vel=(0.0, math.sqrt(2.0))))
        self.assertAlmostEqual(sol.orbit.e, 1.0, places=14)
        self.assertEqual(conic_classify(sol.orbit), ConicType.PARABOLA)
        self.assertFalse(sol.bound)

    def test_just_below_escape_speed_is_open(self):
        """Test that e within the parabola tolerance below 1 is not bound."""
        sol = solve_kepler(UNIT_FIELD, State2D(pos=(1.0, 0.0), vel=(0.0, 1.4142135623)))
        self.assertLess(sol.orbit.e, 1.0)
        self.assertEqual(conic_classify(sol.orbit), ConicType.PARABOLA)
        self.assertFalse(sol.bound)
        with self.assertRaises(UnboundOrbitError):
            solve_kepler(UNIT_FIELD, State2D(pos=(1.0, 0.0), vel=(0.0, 1.4142135623)), require_bound=True)

    def test_radial_motion(self):
        """Test that radial motion is degenerate."""
        with self.assertRaises(DegenerateOrbitError):
            solve_kepler(UNIT_FIELD, State2D(pos=(1.0, 0.0), vel=(1.0, 0.0)))

    def test_require_bound(self):
        """Test rejecting open orbits on request."""
        with self.assertRaises(UnboundOrbitError):
            solve_kepler(UNIT_FIELD, State2D(pos=(1.0, 0.0), vel=(0.0, 2.0)), require_bound=True)
        with self.assertRaises(UnboundOrbitError):
            solve_kepler(CentralField(C=-1.0), State2D(pos=(1.0, 0.0), vel=(0.0, 2.0)), require_bound=True)

    def test_non_inverse_square_field(self):
        """Test that other exponents are not solved in closed form."""
        with self.assertRaises(SolverError):
            solve_kepler(CentralField(C=1.0, n=-3.0), circular_state())


class TestRepulsiveScattering(unittest.TestCase):
    """Test the far hyperbolic branch of a repulsive field."""

    def setUp(self):
        self.field = CentralField(C=-1.0)
        self.state = State2D(pos=(1.0, 0.0), vel=(0.0, 2.0))
        self.sol = solve_kepler(self.field, self.state)

    def test_orbit(self):
        """Test p = k^2 / |C|, e = 5 and periapsis at the start."""
        orbit = self.sol.orbit
        self.assertTrue(orbit.repulsive)
        self.assertAlmostEqual(orbit.p, 4.0, places=14)
        self.assertAlmostEqual(orbit.e, 5.0, places=14)
        self.assertAlmostEqual(orbit.omega, 0.0, places=15)
        self.assertAlmostEqual(closest_approach(self.sol), 1.0, places=14)
        self.assertEqual(conic_classify(orbit), ConicType.HYPERBOLA)

    def test_trajectory_follows_branch(self):
        """Test the numerical trajectory against the far branch."""
        traj = integrate(self.field, self.state, 3.0)
        self.assertGreaterEqual(float(traj.radius.min()), 1.0 - 1e-9)
        self.assertLessEqual(roundtrip_deviation(self.sol, traj), 1e-6 * self.sol.orbit.p)
        self.assertLessEqual(conic_fit_residual(traj, -1.0), 1e-8)

    def test_no_period(self):
        """Test that scattering orbits have no period."""
        with self.assertRaises(UnboundOrbitError):
            orbit_period(self.sol.orbit, -1.0)


class TestBinetSolution(unittest.TestCase):
    """Test the general Binet solution."""

    def test_worked_values(self):
        """Test circle, ellipse and hyperbola from (h, A)."""
        self.assertEqual(conic_classify(binet_solve(1.0, 0.0)), ConicType.CIRCLE)
        ellipse = binet_solve(1.0, 0.5)
        self.assertEqual(ellipse.e, 0.5)
        self.assertEqual(ellipse.p, 1.0)
        self.assertEqual(conic_classify(binet_solve(1.0, 1.5)), ConicType.HYPERBOLA)

    def test_non_positive_h(self):
        """Test that h <= 0 has no attractive balance."""
        for h in (0.0, -1.0):
            with self.subTest(h=h):
                with self.assertRaises(DegenerateOrbitError):
                    binet_solve(h, 0.5)

    def test_agrees_with_hodograph_solution(self):
        """Test both routes from the same initial states."""
        for pos, vel in [((1.0, 0.0), (0.0, 1.2)), ((0.3, -1.1), (0.7, 0.4)), ((-2.0, 0.5), (0.1, -0.6))]:
            with self.subTest(pos=pos, vel=vel):
                state = State2D(pos=pos, vel=vel)
                sol = solve_kepler(UNIT_FIELD, state)
                h, A, theta0 = binet_constants(1.0, state)
                orbit = binet_solve(h, A, theta0, sol.orbit.sense)
                self.assertAlmostEqual(orbit.p, sol.orbit.p, delta=1e-12 * sol.orbit.p)
                self.assertAlmostEqual(orbit.e, sol.orbit.e, delta=1e-12)
                for theta in np.linspace(-3.0, 3.0, 13):
                    if sol.orbit.is_admissible(theta):
                        r = sol.orbit.radius(theta)
                        self.assertAlmostEqual(orbit.radius(theta), r, delta=1e-12 * r)


class TestPeriod(unittest.TestCase):
    """Test closed-form and numerical periods."""

    def test_closed_form_values(self):
        """Test T = 2 pi sqrt(a^3 / C)."""
        C = 4.0 * math.pi ** 2
        self.assertAlmostEqual(orbit_period(ConicOrbit(p=1.0, e=0.0), C), 1.0, places=14)
        self.assertAlmostEqual(orbit_period(ConicOrbit(p=4.0, e=0.0), C), 8.0, places=13)
        sol = solve_kepler(UNIT_FIELD, eccentric_state())
        self.assertAlmostEqual(orbit_period(sol.orbit, 1.0), 2.0 * math.pi * ECCENTRIC_A ** 1.5, places=12)
        self.assertAlmostEqual(orbit_period(sol.orbit, 1.0), 14.9936, places=3)

    def test_unbound(self):
        """Test that open orbits have no period."""
        with self.assertRaises(UnboundOrbitError):
            orbit_period(ConicOrbit(p=1.0, e=1.0), 1.0)

    def test_find_period(self):
        """Test the numerical return time against the closed form."""
        for state in (circular_state(), eccentric_state()):
            with self.subTest(vel=state.vel):
                sol = solve_kepler(UNIT_FIELD, state)
                expected = orbit_period(sol.orbit, 1.0)
                self.assertAlmostEqual(find_period(UNIT_FIELD, state), expected, delta=1e-8 * expected)

    def test_third_law_constant(self):
        """Test (2a)^3 / T^2 for a = 1..5 under C = 4 pi^2."""
        C = 4.0 * math.pi ** 2
        field = CentralField(C=C)
        periods, constants = [], []
        for a in (1.0, 2.0, 3.0, 4.0, 5.0):
            r_peri = a * 0.7
            speed = math.sqrt(C * 1.3 / r_peri)
            T = find_period(field, State2D(pos=(r_peri, 0.0), vel=(0.0, speed)))
            periods.append(T)
            constants.append((2.0 * a) ** 3 / T ** 2)
        self.assertAlmostEqual(periods[0], 1.0, delta=1e-9)
        mean = sum(constants) / len(constants)
        self.assertLessEqual((max(constants) - min(constants)) / mean, 1e-10)
        self.assertAlmostEqual(mean, 8.0, delta=8.0 * 1e-9)

    def test_closure_after_one_period(self):
        """Test that the numerical orbit tracks the conic over a period."""
        sol = solve_kepler(UNIT_FIELD, eccentric_state())
        traj = integrate(UNIT_FIELD, eccentric_state(), orbit_period(sol.orbit, 1.0))
        self.assertLessEqual(roundtrip_deviation(sol, traj), 1e-6 * ECCENTRIC_A)
        np.testing.assert_allclose(traj.pos[-1], [1.0, 0.0], atol=1e-8)

    def test_open_orbit_never_returns(self):
        """Test that a hyperbola has no numerical period."""
        with self.assertRaises(SolverError):
            find_period(UNIT_FIELD, State2D(pos=(1.0, 0.0), vel=(0.0, 2.0)), max_doublings=3)


class TestPrediction(unittest.TestCase):
    """Test positions predicted from the closed form."""

    def test_eccentric_apsides(self):
        """Test periapsis and apoapsis of the e = 0.44 orbit."""
        sol = solve_kepler(UNIT_FIELD, eccentric_state())
        np.testing.assert_allclose(predict_position(sol, 0.0), [1.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(predict_position(sol, math.pi), [-1.44 / 0.56, 0.0], atol=1e-12)

    def test_circle(self):
        """Test that every direction lies at radius p."""
        sol = solve_kepler(UNIT_FIELD, circular_state())
        for theta in np.linspace(0.0, 2.0 * math.pi, 9):
            self.assertAlmostEqual(float(np.hypot(*predict_position(sol, theta))), 1.0, places=14)

    def test_outside_branch(self):
        """Test a direction beyond the asymptotes of an attractive hyperbola."""
        sol = solve_kepler(UNIT_FIELD, State2D(pos=(1.0, 0.0), vel=(0.0, 2.0)))
        self.assertAlmostEqual(sol.orbit.e, 3.0, places=14)
        with self.assertRaises(AdmissibleRangeError):
            predict_position(sol, math.pi)


@pytest.mark.parametrize("speed", [0.8, 1.0, 1.2, 1.4])
def test_vis_viva(speed):
    """a from vis-viva matches p / (1 - e^2)."""
    state = State2D(pos=(1.0, 0.0), vel=(0.0, speed))
    sol = solve_kepler(UNIT_FIELD, state)
    assert vis_viva_semi_major_axis(1.0, state) == pytest.approx(sol.orbit.semi_major_axis, rel=1e-12)
