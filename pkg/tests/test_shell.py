"""
Tests for the shell module.
"""

import math
import tempfile
import unittest
from pathlib import Path

import numpy as np
import pytest

from orbita.core import ParallelManager
from orbita.shell import (
    NEAR_SURFACE_MESH_LEVEL,
    DensityProfile,
    ExteriorPointError,
    MeshError,
    ProfileError,
    ShellError,
    ShellSpec,
    ball_mass,
    inversion_point,
    inversion_ratios,
    load_density_profile,
    point_mass_force,
    projected_solid_angle,
    shell_force_adaptive,
    shell_force_quadrature,
    solid_ball_force,
    uniform_profile,
)
from tests.fixtures import uniform_ball_density, write_profile

UNIT_MASS_RHO = 1.0 / (4.0 * math.pi)


class TestPointMassForce(unittest.TestCase):
    """Test the point-mass reference."""

    def test_worked_values(self):
        """Test G m1 m2 / d^2."""
        self.assertEqual(point_mass_force(1.0, 1.0, 1.0, 2.0), 0.25)
        self.assertAlmostEqual(point_mass_force(1.0, 1.0, 4.0 * math.pi, 2.0), math.pi, places=14)

    def test_inverse_square_scaling(self):
        """Test that doubling d quarters the force."""
        self.assertAlmostEqual(
            point_mass_force(2.0, 3.0, 5.0, 7.0) / point_mass_force(2.0, 3.0, 5.0, 14.0), 4.0, places=13
        )

    def test_zero_separation(self):
        """Test that d = 0 is rejected."""
        with self.assertRaises(ShellError):
            point_mass_force(1.0, 1.0, 1.0, 0.0)


class TestInversion(unittest.TestCase):
    """Test the inversion point and similar triangles."""

    def setUp(self):
        self.shell = ShellSpec(R=1.0, rho=1.0)

    def test_inversion_point(self):
        """Test |OP'| |OP| = R^2."""
        np.testing.assert_allclose(inversion_point(self.shell, (2.0, 0.0, 0.0)), [0.5, 0.0, 0.0])
        np.testing.assert_allclose(inversion_point(ShellSpec(R=2.0, rho=1.0), (0.0, 0.0, 8.0)), [0.0, 0.0, 0.5])

    def test_ratio_value(self):
        """Test the ratio at a pole perpendicular to OP."""
        ratio, angle_q, angle_p = inversion_ratios(self.shell, (2.0, 0.0, 0.0), (0.0, 0.0, 1.0))
        self.assertAlmostEqual(ratio, 0.5, places=14)
        self.assertAlmostEqual(angle_q, angle_p, places=14)

    def test_random_shell_points(self):
        """Test the similar-triangle relations at 1000 random shell points."""
        rng = np.random.default_rng(0)
        directions = rng.normal(size=(1000, 3))
        directions /= np.linalg.norm(directions, axis=1)[:, None]
        P = (2.5, 0.0, 0.0)
        for q in directions:
            ratio, angle_q, angle_p = inversion_ratios(self.shell, P, q)
            self.assertAlmostEqual(ratio, 0.4, delta=0.4 * 1e-12)
            self.assertAlmostEqual(angle_q, angle_p, delta=1e-12)

    def test_interior_point_rejected(self):
        """Test that P inside or on the shell has no exterior inversion."""
        for P in [(0.5, 0.0, 0.0), (1.0, 0.0, 0.0)]:
            with self.subTest(P=P):
                with self.assertRaises(ExteriorPointError):
                    inversion_point(self.shell, P)


class TestShellQuadrature(unittest.TestCase):
    """Test the surface quadrature of the shell attraction."""

    def test_unit_mass_shell(self):
        """Test that a unit-mass shell attracts like a point mass."""
        shell = ShellSpec(R=1.0, rho=UNIT_MASS_RHO)
        self.assertAlmostEqual(shell.mass, 1.0, places=14)
        result = shell_force_quadrature(shell, (2.0, 0.0, 0.0))
        self.assertAlmostEqual(result.axial, 0.25, delta=1e-6)
        result = shell_force_quadrature(shell, (10.0, 0.0, 0.0))
        self.assertAlmostEqual(result.axial, 0.01, delta=1e-6 * 0.01)
        self.assertEqual(result.n_nodes, (2 ** 7) ** 2)

    def test_force_points_to_center(self):
        """Test the direction of the attraction and its transverse part."""
        shell = ShellSpec(R=1.0, rho=UNIT_MASS_RHO, center=(1.0, -2.0, 0.5))
        P = np.array([1.0, -2.0, 0.5]) + np.array([1.0, 2.0, 2.0])
        result = shell_force_quadrature(shell, P)
        expected = -np.array([1.0, 2.0, 2.0]) / 3.0 / 9.0
        np.testing.assert_allclose(result.force, expected, rtol=1e-10, atol=1e-14)

    def test_exact_to_point_mass(self):
        """Test agreement with G M m / d^2 at several distances."""
        shell = ShellSpec(R=1.0, rho=0.3)
        for d in [1.5, 2.0, 5.0, 10.0]:
            with self.subTest(d=d):
                result = shell_force_quadrature(shell, (0.0, d, 0.0), m1=2.0, G=0.5, mesh_level=8)
                expected = point_mass_force(0.5, 2.0, shell.mass, d)
                self.assertAlmostEqual(result.axial, expected, delta=expected * 1e-6)

    def test_transverse_component(self):
        """Test the symmetry of the mesh about the axis."""
        shell = ShellSpec(R=1.0, rho=1.0)
        for level in range(1, 7):
            result = shell_force_quadrature(shell, (0.6, 0.8, 1.5), mesh_level=level)
            self.assertLessEqual(result.transverse, 1e-10 * max(result.axial, 1.0))

    def test_convergence(self):
        """Test that refinement shrinks the error at least fourfold per level."""
        shell = ShellSpec(R=1.0, rho=UNIT_MASS_RHO)
        exact = 1.0 / 1.5 ** 2
        errors = [
            abs(shell_force_quadrature(shell, (1.5, 0.0, 0.0), mesh_level=level).axial - exact) / exact
            for level in range(1, 6)
        ]
        for coarse, fine in zip(errors, errors[1:]):
            self.assertLessEqual(fine, max(coarse / 4.0, 1e-14))

    def test_error_estimate_decreases(self):
        """Test that est_error shrinks with the level before the roundoff floor."""
        shell = ShellSpec(R=1.0, rho=UNIT_MASS_RHO)
        estimates = [
            shell_force_quadrature(shell, (1.5, 0.0, 0.0), mesh_level=level).est_error for level in range(1, 5)
        ]
        for coarse, fine in zip(estimates, estimates[1:]):
            self.assertLess(fine, coarse)

    def test_rtol_not_met(self):
        """Test that an unmet accuracy requirement raises MeshError."""
        shell = ShellSpec(R=1.0, rho=1.0)
        with self.assertRaises(MeshError):
            shell_force_quadrature(shell, (1.5, 0.0, 0.0), mesh_level=1, rtol=1e-12)

    def test_invalid_mesh_level(self):
        """Test mesh levels outside the supported range."""
        shell = ShellSpec(R=1.0, rho=1.0)
        for level in [0, 13]:
            with self.subTest(level=level):
                with self.assertRaises(MeshError):
                    shell_force_quadrature(shell, (2.0, 0.0, 0.0), mesh_level=level)

    def test_near_surface_requires_fine_mesh(self):
        """Test the near-surface guard."""
        shell = ShellSpec(R=1.0, rho=1.0)
        with self.assertRaises(MeshError):
            shell_force_quadrature(shell, (1.0005, 0.0, 0.0))
        with self.assertRaises(MeshError):
            shell_force_quadrature(shell, (1.0005, 0.0, 0.0), mesh_level=NEAR_SURFACE_MESH_LEVEL - 1)
        result = shell_force_quadrature(shell, (1.002, 0.0, 0.0))
        self.assertGreater(result.axial, 0.0)

    def test_exterior_only(self):
        """Test that interior and on-surface points are rejected by default."""
        shell = ShellSpec(R=1.0, rho=1.0)
        for P in [(0.5, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 0.0)]:
            with self.subTest(P=P):
                with self.assertRaises(ExteriorPointError):
                    shell_force_quadrature(shell, P)

    def test_interior_point_allowed(self):
        """Test that the net interior force vanishes when interior points are allowed."""
        shell = ShellSpec(R=1.0, rho=1.0)
        result = shell_force_quadrature(shell, (0.5, 0.0, 0.0), allow_interior=True)
        self.assertLessEqual(result.magnitude, 1e-8)

    def test_adaptive(self):
        """Test adaptive refinement to a tolerance."""
        shell = ShellSpec(R=1.0, rho=UNIT_MASS_RHO)
        result = shell_force_adaptive(shell, (3.0, 0.0, 0.0), rtol=1e-10)
        self.assertLessEqual(result.est_error, 1e-10)
        self.assertAlmostEqual(result.axial, 1.0 / 9.0, delta=1e-12)
        with self.assertRaises(MeshError):
            shell_force_adaptive(shell, (1.5, 0.0, 0.0), rtol=1e-12, max_level=3)

    def test_invalid_shell(self):
        """Test that R and rho must be positive."""
        with self.assertRaises(ShellError):
            ShellSpec(R=0.0, rho=1.0)
        with self.assertRaises(ShellError):
            ShellSpec(R=1.0, rho=-1.0)


@pytest.mark.parametrize("d", [1.5, 2.0, 5.0])
def test_projected_solid_angle(d):
    """The projected solid angle around the inversion point is 4 pi."""
    shell = ShellSpec(R=1.0, rho=1.0)
    assert projected_solid_angle(shell, (0.0, 0.0, d)) == pytest.approx(4.0 * math.pi, abs=1e-10)


class TestSolidBall(unittest.TestCase):
    """Test the layered solid ball."""

    def test_uniform_ball(self):
        """Test a uniform unit-mass ball."""
        profile = uniform_profile(uniform_ball_density())
        self.assertAlmostEqual(ball_mass(profile, 1.0), 1.0, places=12)
        result = solid_ball_force(profile, 1.0, (2.0, 0.0, 0.0))
        self.assertAlmostEqual(result.axial, 0.25, delta=1e-5)

    def test_two_layer_ball(self):
        """Test a dense core inside a light mantle."""
        raw = DensityProfile(radii=(0.0, 0.49, 0.51, 1.0), density=(8.0, 8.0, 1.0, 1.0))
        mass = ball_mass(raw, 1.0)
        profile = DensityProfile(radii=raw.radii, density=tuple(rho / mass for rho in raw.density))
        self.assertAlmostEqual(ball_mass(profile, 1.0), 1.0, places=12)
        result = solid_ball_force(profile, 1.0, (2.0, 0.0, 0.0))
        self.assertAlmostEqual(result.axial, 0.25, delta=1e-5)
        self.assertLessEqual(result.transverse, 1e-10)

    def test_zero_density(self):
        """Test that a massless profile exerts no force."""
        result = solid_ball_force(uniform_profile(0.0), 1.0, (2.0, 0.0, 0.0))
        self.assertEqual(result.force, (0.0, 0.0, 0.0))
        self.assertEqual(result.n_nodes, 0)

    def test_parallel_matches_sequential(self):
        """Test that layer results are summed identically with threads."""
        profile = uniform_profile(uniform_ball_density())
        sequential = solid_ball_force(profile, 1.0, (0.0, 3.0, 0.0), layers=16, manager=ParallelManager(mode="sync"))
        threaded = solid_ball_force(
            profile, 1.0, (0.0, 3.0, 0.0), layers=16, manager=ParallelManager(mode="thread", max_workers=4)
        )
        self.assertEqual(sequential.force, threaded.force)

    def test_interior_point(self):
        """Test that the field point must be outside the ball."""
        with self.assertRaises(ExteriorPointError):
            solid_ball_force(uniform_profile(1.0), 1.0, (0.5, 0.0, 0.0))

    def test_invalid_profiles(self):
        """Test profile validation."""
        for radii, density in [
            ((0.0, 1.0), (1.0, -1.0)),
            ((0.0, 0.0), (1.0, 1.0)),
            ((0.5, 0.2), (1.0, 1.0)),
            ((0.0,), (1.0, 2.0)),
            ((), ()),
        ]:
            with self.subTest(radii=radii):
                with self.assertRaises(ProfileError):
                    DensityProfile(radii=radii, density=density)


class TestLoadDensityProfile(unittest.TestCase):
    """Test reading density profiles from CSV."""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.root = Path(self.temp_dir.name)

    def tearDown(self):
        self.temp_dir.cleanup()

    def test_with_header(self):
        """Test a profile with a header row."""
        path = write_profile(self.root / "profile.csv", [(0.0, 2.0), (0.5, 1.0), (1.0, 0.5)])
        profile = load_density_profile(path)
        self.assertEqual(profile.radii, (0.0, 0.5, 1.0))
        self.assertEqual(profile.density, (2.0, 1.0, 0.5))

    def test_without_header(self):
        """Test a bare two-column profile."""
        path = write_profile(self.root / "profile.csv", [(0.0, 3.0), (1.0, 3.0)], header=False)
        profile = load_density_profile(path)
        self.assertEqual(profile.radii, (0.0, 1.0))
        self.assertAlmostEqual(float(profile.density_at(0.25)), 3.0)

    def test_invalid_files(self):
        """Test missing files, wrong shapes and non-numeric cells."""
        wide = self.root / "wide.csv"
        wide.write_text("0,1,2\n1,1,2\n")
        text = self.root / "text.csv"
        text.write_text("radius,density\n0,abc\n1,1\n")
        decreasing = write_profile(self.root / "decreasing.csv", [(1.0, 1.0), (0.5, 1.0)])
        for path in [self.root / "missing.csv", wide, text, decreasing]:
            with self.subTest(path=path.name):
                with self.assertRaises(ProfileError):
                    load_density_profile(path)
