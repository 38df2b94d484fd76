"""
End-to-end tests for the command-line interface.
"""

import io
import json
import math
import os
import tempfile
import unittest

import pandas as pd
import pytest

from orbita.experiments import _convergence_order
from orbita.main import main
from orbita.observability import configure_logging


class CliTestCase(unittest.TestCase):
    """Runs the CLI with reports written into a temporary directory."""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.temp_dir.cleanup()

    def path(self, name: str) -> str:
        return os.path.join(self.temp_dir.name, name)

    def run_json(self, argv):
        out = self.path("report.json")
        code = main(["--format", "json", "--out", out, *argv])
        data = None
        if os.path.exists(out):
            with open(out, encoding="utf-8") as f:
                data = json.load(f)
        return code, data

    def statuses(self, data):
        return {v["name"]: v["status"] for v in data["verdicts"]}


class TestEllipseCommand(CliTestCase):
    """Test the ellipse experiment."""

    def test_standard_ellipse(self):
        """Test the focal table of the a=5, c=3 ellipse."""
        out = self.path("ellipse.csv")
        self.assertEqual(main(["ellipse", "--a", "5", "--c", "3", "--out", out]), 0)
        with open(out, encoding="utf-8", newline="") as f:
            tables = f.read().split("\r\n\r\n")
        results = pd.read_csv(io.StringIO(tables[0]))
        self.assertEqual(len(results), 360)
        self.assertAlmostEqual(results["d1"][0], 8.0, places=12)
        self.assertAlmostEqual(results["d2"][0], 2.0, places=12)
        verdicts = pd.read_csv(io.StringIO(tables[1]), keep_default_na=False)
        self.assertTrue((verdicts["status"] == "PASS").all())

    def test_invalid_ellipse(self):
        """Test that c >= a is invalid input."""
        self.assertEqual(main(["ellipse", "--a", "3", "--c", "5", "--out", self.path("bad.csv")]), 2)

    def test_missing_parameter(self):
        """Test that a missing required parameter is invalid input."""
        self.assertEqual(main(["ellipse", "--a", "5", "--out", self.path("bad.csv")]), 2)
        self.assertFalse(os.path.exists(self.path("bad.csv")))

    def test_deterministic_csv(self):
        """Test that repeated runs write identical bytes."""
        first, second = self.path("first.csv"), self.path("second.csv")
        main(["ellipse", "--a", "5", "--c", "3", "--samples", "36", "--out", first])
        main(["ellipse", "--a", "5", "--c", "3", "--samples", "36", "--out", second])
        with open(first, "rb") as f1, open(second, "rb") as f2:
            self.assertEqual(f1.read(), f2.read())

    def test_config_precedence(self):
        """Test that flags override the config file, which overrides defaults."""
        config = self.path("config.json")
        with open(config, "w") as f:
            json.dump({"format": "json", "experiments": {"ellipse": {"a": 5.0, "c": 3.0, "samples": 8}}}, f)
        out = self.path("report.out")
        self.assertEqual(main(["ellipse", "--config", config, "--samples", "4", "--out", out]), 0)
        with open(out, encoding="utf-8") as f:
            data = json.load(f)
        self.assertEqual(len(data["rows"]), 4)
        self.assertEqual(data["inputs"]["a"], 5.0)

    def test_log_file(self):
        """Test JSON log records in a file, tagged with the run context."""
        log_file = self.path(os.path.join("logs", "run.log"))
        argv = ["--log-json", "--log-file", log_file, "ellipse", "--a", "5", "--c", "3", "--samples", "8"]
        try:
            self.assertEqual(main([*argv, "--out", self.path("ellipse.csv")]), 0)
        finally:
            configure_logging(console_output=False)
        with open(log_file, encoding="utf-8") as f:
            records = [json.loads(line) for line in f if line.strip()]
        running = [r for r in records if r["message"].startswith("Running ellipse")]
        self.assertEqual(len(running), 1)
        self.assertEqual(running[0]["experiment"], "ellipse")
        self.assertEqual(running[0]["report_format"], "csv")
        self.assertEqual(len(running[0]["run_id"]), 12)

    def test_unknown_config_key(self):
        """Test that a misspelled experiment parameter is invalid input."""
        config = self.path("config.json")
        with open(config, "w") as f:
            json.dump({"experiments": {"ellipse": {"smaples": 8}}}, f)
        self.assertEqual(main(["ellipse", "--a", "5", "--c", "3", "--config", config]), 2)


class TestInferCommand(CliTestCase):
    """Test force-law recovery."""

    def test_standard_motion(self):
        """Test that all routes recover 4 pi^2 a^3 / T^2 and r^-2."""
        code, data = self.run_json(["infer", "--a", "5", "--c", "3", "--T", "1"])
        self.assertEqual(code, 0)
        self.assertAlmostEqual(data["summary"]["fitted_coefficient"] / (500.0 * math.pi ** 2), 1.0, places=9)
        self.assertAlmostEqual(data["summary"]["fitted_exponent"], -2.0, places=9)
        self.assertEqual(set(self.statuses(data).values()), {"PASS"})

    def test_circle(self):
        """Test that a circle skips the fit with N/A verdicts."""
        code, data = self.run_json(["infer", "--a", "1", "--c", "0", "--T", "1", "--samples", "16"])
        self.assertEqual(code, 0)
        statuses = self.statuses(data)
        self.assertEqual(statuses["exponent_error"], "N/A")
        self.assertEqual(statuses["coefficient_error"], "N/A")
        self.assertEqual(statuses["method_disagreement"], "PASS")
        self.assertEqual(len(data["notices"]), 1)

    def test_tolerance_scale_fails(self):
        """Test that shrinking tolerances turns a nonzero error into a failure."""
        code, data = self.run_json(["infer", "--a", "5", "--c", "3", "--T", "1", "--tol-scale", "1e-30"])
        self.assertEqual(code, 1)
        self.assertEqual(self.statuses(data)["trajectory_exponent_error"], "FAIL")


class TestSolveCommand(CliTestCase):
    """Test the Kepler solver experiment."""

    def test_bound_orbit(self):
        """Test the eccentric orbit from (1, 0) with speed 1.2."""
        code, data = self.run_json(["solve", "--C", "1", "--pos", "1,0", "--vel", "0,1.2"])
        self.assertEqual(code, 0)
        self.assertEqual(data["summary"]["type"], "ellipse")
        self.assertAlmostEqual(data["summary"]["e"], 0.44, places=12)
        self.assertAlmostEqual(data["summary"]["p"], 1.44, places=12)
        self.assertAlmostEqual(data["summary"]["energy"], -0.28, places=12)

    def test_near_escape_speed(self):
        """Test that an orbit just under escape speed is reported as open."""
        code, data = self.run_json(["solve", "--C", "1", "--pos", "1,0", "--vel", "0,1.4142135623"])
        self.assertEqual(code, 0)
        self.assertEqual(data["summary"]["type"], "parabola")
        self.assertNotIn("period", data["summary"])
        self.assertNotIn("period_error", self.statuses(data))
        self.assertEqual(len(data["notices"]), 1)

    def test_radial_motion(self):
        """Test that radial motion is invalid input."""
        self.assertEqual(main(["solve", "--C", "1", "--pos", "1,0", "--vel", "1,0", "--out", self.path("r.csv")]), 2)

    def test_malformed_vector(self):
        """Test that a vector needs two components."""
        self.assertEqual(main(["solve", "--C", "1", "--pos", "1", "--vel", "0,1"]), 2)


class TestShellCommand(CliTestCase):
    """Test the shell experiment."""

    def test_exterior_point(self):
        """Test a unit-mass shell seen from twice its radius."""
        code, data = self.run_json(["shell", "--R", "1", "--rho", "0.0795775", "--d", "2"])
        self.assertEqual(code, 0)
        self.assertAlmostEqual(data["summary"]["force"] / 0.25, 1.0, delta=1e-6)
        self.assertEqual(data["rows"][-1][0], 6)
        self.assertEqual(self.statuses(data)["convergence_order"], "PASS")
        self.assertGreaterEqual(data["summary"]["convergence_order"], 2.0)

    def test_single_level_has_no_order(self):
        """Test that one tabulated level gives no convergence order."""
        code, data = self.run_json(["shell", "--R", "1", "--rho", "0.0795775", "--d", "2", "--mesh", "1"])
        self.assertEqual(self.statuses(data)["convergence_order"], "N/A")
        self.assertIsNone(data["summary"]["convergence_order"])

    def test_inside_shell(self):
        """Test that an interior point is invalid input."""
        self.assertEqual(main(["shell", "--R", "1", "--rho", "1", "--d", "0.5", "--out", self.path("s.csv")]), 2)


class TestConvergenceOrder(unittest.TestCase):
    """Test the observed order of the shell refinement table."""

    def test_smallest_ratio(self):
        """Test log2 of the weakest error reduction."""
        self.assertAlmostEqual(_convergence_order([1e-2, 1e-4, 2.5e-5]), 2.0, places=12)

    def test_roundoff_floor_skipped(self):
        """Test that errors at the roundoff floor do not count."""
        self.assertAlmostEqual(_convergence_order([1.6e-3, 1e-4, 3e-16, 5e-16]), 4.0, places=12)
        self.assertIsNone(_convergence_order([1e-15, 2e-16]))
        self.assertIsNone(_convergence_order([]))


class TestOtherCommands(CliTestCase):
    """Test the third-law, two-body and Binet experiments."""

    def test_kepler3(self):
        """Test the third-law constant across semi-major axes."""
        code, data = self.run_json(["kepler3", "--C", "1", "--a", "1,2,4"])
        self.assertEqual(code, 0)
        self.assertEqual(len(data["rows"]), 3)
        self.assertAlmostEqual(data["summary"]["third_law_constant"], 2.0 / math.pi ** 2, places=9)

    def test_kepler3_astronomical_units(self):
        """Test a = 1..5 under C = 4 pi^2, where a = 1 has unit period."""
        C = repr(4.0 * math.pi ** 2)
        code, data = self.run_json(["kepler3", "--C", C, "--a", "1,2,3,4,5"])
        self.assertEqual(code, 0)
        self.assertEqual(set(self.statuses(data).values()), {"PASS"})
        constants = [row[3] for row in data["rows"]]
        self.assertLessEqual((max(constants) - min(constants)) / data["summary"]["third_law_constant"], 1e-10)
        self.assertAlmostEqual(data["rows"][0][1], 1.0, delta=1e-9)

    def test_twobody(self):
        """Test the symmetric binary."""
        code, data = self.run_json(["twobody"])
        self.assertEqual(code, 0)
        self.assertAlmostEqual(data["summary"]["relative_C"], 2.0)

    def test_twobody_partial_states(self):
        """Test that partial explicit states are invalid input."""
        self.assertEqual(main(["twobody", "--pos1", "1,0"]), 2)

    def test_binet(self):
        """Test the inverse-square and inverse-fifth-power recoveries."""
        code, data = self.run_json(["binet"])
        self.assertEqual(code, 0)
        self.assertAlmostEqual(data["summary"]["ellipse_exponent"], -2.0, delta=1e-6)
        self.assertAlmostEqual(data["summary"]["circle_exponent"], -5.0, delta=1e-6)


def test_report_to_stdout(capsys):
    """Without --out the report is printed."""
    assert main(["ellipse", "--a", "5", "--c", "3", "--samples", "4", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["experiment"] == "ellipse"


@pytest.mark.parametrize("argv,expected", [(["--version"], 0), ([], 2), (["orbit"], 2), (["ellipse", "--a", "x"], 2)])
def test_argument_errors(argv, expected):
    """Parser errors and --version exit without running an experiment."""
    assert main(argv) == expected
