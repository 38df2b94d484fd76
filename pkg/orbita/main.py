"""
Command-line interface for Orbita.

Runs one named experiment, writes its report as CSV or JSON, and exits with
0 when every verdict passes (or is N/A), 1 when a verdict fails and 2 for
invalid input.
"""

import argparse
import sys
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from orbita import __version__
from orbita.core import ConfigurationError, ExperimentSettings, ParallelManager, experiment_params, load_settings
from orbita.dynamics import DynamicsError, State2D
from orbita.experiments import (
    EXPERIMENTS,
    cmd_binet,
    cmd_ellipse,
    cmd_infer,
    cmd_kepler3,
    cmd_shell,
    cmd_solve,
    cmd_twobody,
)
from orbita.geometry import GeometryError
from orbita.inference import InferenceError
from orbita.observability import configure_logging, get_logger
from orbita.reporting import Report, ReportError, render_table, write_report
from orbita.shell import DEFAULT_LAYERS, ShellError
from orbita.solver import SolverError

EXIT_OK = 0
EXIT_FAILED_VERDICT = 1
EXIT_INVALID_INPUT = 2

INPUT_ERRORS = (
    ConfigurationError,
    DynamicsError,
    GeometryError,
    InferenceError,
    ReportError,
    ShellError,
    SolverError,
    ValidationError,
)


def _floats(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _vector(text: str) -> List[float]:
    values = _floats(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}")
    return values


def _global_options() -> argparse.ArgumentParser:
    # Defaults are suppressed so the options can be given before or after
    # the subcommand without one position overwriting the other.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=["csv", "json"], default=argparse.SUPPRESS, help="Report format (default: csv)"
    )
    common.add_argument("--out", default=argparse.SUPPRESS, help="Report file (default: stdout)")
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON config file merged under the flags")
    common.add_argument(
        "--tol-scale",
        type=float,
        dest="tol_scale",
        default=argparse.SUPPRESS,
        help="Factor applied to verdict tolerances",
    )
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS, help="Enable debug logging")
    common.add_argument(
        "--log-json", action="store_true", dest="log_json", default=argparse.SUPPRESS, help="Log as JSON"
    )
    common.add_argument(
        "--log-file", dest="log_file", default=argparse.SUPPRESS, help="Also write logs to this file"
    )
    return common


def setup_arg_parser() -> argparse.ArgumentParser:
    """Set up the command line argument parser."""
    common = _global_options()
    parser = argparse.ArgumentParser(
        prog="orbita",
        description="Orbita: numerical checks of Kepler's laws, the inverse-square law and the shell theorem",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"orbita {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    ellipse = subparsers.add_parser("ellipse", parents=[common], help="Focal geometry and curvature of an ellipse")
    ellipse.add_argument("--a", type=float, help="Semi-major axis")
    ellipse.add_argument("--c", type=float, help="Center-to-focus distance")
    ellipse.add_argument("--samples", type=int, help="Number of parametric samples (default: 360)")

    infer = subparsers.add_parser("infer", parents=[common], help="Recover the force law from Keplerian motion")
    infer.add_argument("--a", type=float, help="Semi-major axis")
    infer.add_argument("--c", type=float, help="Center-to-focus distance")
    infer.add_argument("--T", type=float, help="Orbital period")
    infer.add_argument("--samples", type=int, help="Number of focal-angle samples (default: 64)")

    solve = subparsers.add_parser("solve", parents=[common], help="Solve the Kepler problem for an initial state")
    solve.add_argument("--C", type=float, help="Field strength (negative for repulsion)")
    solve.add_argument("--pos", type=_vector, help="Initial position x,y")
    solve.add_argument("--vel", type=_vector, help="Initial velocity vx,vy")

    shell = subparsers.add_parser("shell", parents=[common], help="Shell attraction by surface quadrature")
    shell.add_argument("--R", type=float, help="Shell radius")
    shell.add_argument("--rho", type=float, help="Surface mass density")
    shell.add_argument("--d", type=float, help="Distance of the field point from the center")
    shell.add_argument("--mesh", type=int, help="Mesh level (default: 6)")
    shell.add_argument("--G", type=float, help="Gravitational constant (default: 1)")
    shell.add_argument("--m1", type=float, help="Test mass (default: 1)")
    shell.add_argument("--profile", help="Radial density CSV for a solid ball of radius R")
    shell.add_argument("--layers", type=int, help=f"Solid ball layers (default: {DEFAULT_LAYERS})")

    kepler3 = subparsers.add_parser("kepler3", parents=[common], help="Kepler's third law from simulated orbits")
    kepler3.add_argument("--C", type=float, help="Field strength")
    kepler3.add_argument("--a", type=_floats, help="Comma-separated semi-major axes")
    kepler3.add_argument("--ecc", type=float, help="Eccentricity of the simulated orbits (default: 0.3)")

    twobody = subparsers.add_parser("twobody", parents=[common], help="Two-body run and its one-body reduction")
    twobody.add_argument("--G", type=float, help="Gravitational constant (default: 1)")
    twobody.add_argument("--m1", type=float, help="Mass of body 1 (default: 1)")
    twobody.add_argument("--m2", type=float, help="Mass of body 2 (default: 1)")
    twobody.add_argument("--pos1", type=_vector, help="Position of body 1")
    twobody.add_argument("--vel1", type=_vector, help="Velocity of body 1")
    twobody.add_argument("--pos2", type=_vector, help="Position of body 2")
    twobody.add_argument("--vel2", type=_vector, help="Velocity of body 2")
    twobody.add_argument("--periods", type=float, help="Number of relative periods (default: 1)")

    binet = subparsers.add_parser(
        "binet", parents=[common], help="Force laws from sampled orbits via the Binet equation"
    )
    binet.add_argument("--a", type=float, help="Semi-major axis of the Kepler ellipse")
    binet.add_argument("--c", type=float, help="Center-to-focus distance of the Kepler ellipse")
    binet.add_argument("--T", type=float, help="Period of the Kepler ellipse")
    binet.add_argument("--R", type=float, help="Radius of the circle through the center")
    binet.add_argument("--samples", type=int, help="Samples per orbit (default: 401)")

    return parser


REQUIRED = object()

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "ellipse": {"a": REQUIRED, "c": REQUIRED, "samples": 360},
    "infer": {"a": REQUIRED, "c": REQUIRED, "T": REQUIRED, "samples": 64},
    "solve": {"C": REQUIRED, "pos": REQUIRED, "vel": REQUIRED},
    "shell": {
        "R": REQUIRED, "rho": REQUIRED, "d": REQUIRED, "mesh": 6, "G": 1.0, "m1": 1.0,
        "profile": None, "layers": DEFAULT_LAYERS,
    },
    "kepler3": {"C": REQUIRED, "a": REQUIRED, "ecc": 0.3},
    "twobody": {
        "G": 1.0, "m1": 1.0, "m2": 1.0, "pos1": None, "vel1": None, "pos2": None, "vel2": None, "periods": 1.0,
    },
    "binet": {"a": 5.0, "c": 3.0, "T": 1.0, "R": 1.0, "samples": 401},
}


def _two_body_states(params: Dict[str, Any]):
    vectors = [params[key] for key in ("pos1", "vel1", "pos2", "vel2")]
    if all(v is None for v in vectors):
        return None
    if any(v is None for v in vectors):
        raise ConfigurationError("twobody needs all of pos1, vel1, pos2, vel2 or none of them")
    pos1, vel1, pos2, vel2 = vectors
    return (
        State2D(pos=tuple(pos1), vel=tuple(vel1)),
        State2D(pos=tuple(pos2), vel=tuple(vel2)),
    )


def run_experiment(name: str, params: Dict[str, Any], settings: ExperimentSettings) -> Report:
    """Dispatch one experiment with resolved parameters."""
    scale = settings.tol_scale
    sim = settings.sim
    manager = ParallelManager(max_workers=settings.threads)
    runners: Dict[str, Callable[[], Report]] = {
        "ellipse": lambda: cmd_ellipse(params["a"], params["c"], params["samples"], tol_scale=scale),
        "infer": lambda: cmd_infer(params["a"], params["c"], params["T"], params["samples"], cfg=sim, tol_scale=scale),
        "solve": lambda: cmd_solve(params["C"], params["pos"], params["vel"], cfg=sim, tol_scale=scale),
        "shell": lambda: cmd_shell(
            params["R"], params["rho"], params["d"], params["mesh"], G=params["G"], m1=params["m1"],
            profile=params["profile"], layers=params["layers"], seed=sim.seed, tol_scale=scale, manager=manager,
        ),
        "kepler3": lambda: cmd_kepler3(
            params["C"], params["a"], params["ecc"], cfg=sim, tol_scale=scale, manager=manager
        ),
        "twobody": lambda: cmd_twobody(
            params["G"], params["m1"], params["m2"], states=_two_body_states(params), periods=params["periods"],
            cfg=sim, tol_scale=scale,
        ),
        "binet": lambda: cmd_binet(
            params["a"], params["c"], params["T"], params["R"], params["samples"], tol_scale=scale
        ),
    }
    return runners[name]()


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the application."""
    parser = setup_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    options = vars(args)
    configure_logging(
        level="debug" if options.get("verbose") else "info",
        log_file=options.get("log_file"),
        json_format=bool(options.get("log_json")),
    )
    logger = get_logger("orbita.cli", experiment=args.command)

    try:
        settings = load_settings(
            options.get("config"),
            {"format": options.get("format"), "out": options.get("out"), "tol_scale": options.get("tol_scale")},
        )
        flags = {key: options.get(key) for key in DEFAULTS[args.command]}
        params = experiment_params(settings, args.command, DEFAULTS[args.command], flags)
        missing = [key for key, value in params.items() if value is REQUIRED]
        if missing:
            raise ConfigurationError(
                f"{args.command} requires " + ", ".join(f"--{key}" for key in missing)
            )

        logger = logger.with_context(report_format=settings.format, threads=settings.threads)
        logger.info(f"Running {args.command} with {params}")
        report = run_experiment(args.command, params, settings)
        logger.info(render_table(report))
        write_report(report, settings.format, settings.out)
    except INPUT_ERRORS as e:
        logger.error(f"Invalid input: {str(e)}")
        print(f"orbita {args.command}: error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT

    if report.exit_code != EXIT_OK:
        logger.warning(f"Failed verdicts: {[v.name for v in report.failed]}")
        return EXIT_FAILED_VERDICT
    return EXIT_OK


__all__ = ["EXPERIMENTS", "main", "run_experiment", "setup_arg_parser"]
