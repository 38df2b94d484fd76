"""
Configuration module for Orbita.

Simulation and experiment settings are pydantic models. Values are merged in
increasing precedence: built-in defaults, environment (``.env`` supported),
a JSON config file, then explicit command-line flags.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

logger = logging.getLogger("orbita.core.config")

THREADS_ENV_VAR = "ORBITA_THREADS"


class ConfigurationError(Exception):
    """Exception raised for configuration errors."""
    pass


class SimConfig(BaseModel):
    """
    Integrator settings shared by every trajectory computation.

    Attributes:
        integrator: "adaptive" (embedded Runge-Kutta pair) or "fixed" (classical RK4)
        method: scipy adaptive method name
        rel_tol: Relative local error tolerance
        abs_tol: Absolute local error tolerance
        r_min_factor: Collision guard as a fraction of the initial radius
        max_steps: Step budget before giving up
        fixed_step: Step size for the fixed-step integrator
        n_output: Number of uniformly spaced output samples
        seed: Seed for randomized property sweeps
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    integrator: Literal["adaptive", "fixed"] = "adaptive"
    method: Literal["DOP853", "RK45"] = "DOP853"
    rel_tol: float = 1e-12
    abs_tol: float = 1e-14
    r_min_factor: float = 1e-8
    max_steps: int = 1_000_000
    fixed_step: float = 1e-3
    n_output: int = 2001
    seed: int = 0

    @field_validator("rel_tol", "abs_tol", "r_min_factor", "fixed_step")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError(f"must be positive, got {value}")
        return value

    @field_validator("max_steps")
    @classmethod
    def _positive_steps(cls, value: int) -> int:
        if value <= 0:
            raise ValueError(f"max_steps must be positive, got {value}")
        return value

    @field_validator("n_output")
    @classmethod
    def _enough_output(cls, value: int) -> int:
        if value < 2:
            raise ValueError(f"n_output must be at least 2, got {value}")
        return value


class ExperimentSettings(BaseModel):
    """
    Global settings of a CLI run.

    Attributes:
        format: Report format, "csv" or "json"
        out: Output path; None writes to stdout
        tol_scale: Factor applied to every verdict tolerance
        threads: Worker cap for independent sub-experiments
        sim: Integrator settings
        experiments: Per-experiment parameter overrides keyed by subcommand
    """

    model_config = ConfigDict(extra="forbid")

    format: Literal["csv", "json"] = "csv"
    out: Optional[str] = None
    tol_scale: float = 1.0
    threads: int = Field(default=1, ge=1)
    sim: SimConfig = Field(default_factory=SimConfig)
    experiments: Dict[str, Dict[str, Any]] = Field(default_factory=dict)

    @field_validator("tol_scale")
    @classmethod
    def _positive_scale(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError(f"tol_scale must be positive, got {value}")
        return value


def threads_from_env(default: int = 1) -> int:
    """
    Read the worker cap from the environment.

    Returns:
        The value of ORBITA_THREADS, or ``default`` when unset

    Raises:
        ConfigurationError: If the variable is set but not a positive integer
    """
    load_dotenv()
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or raw.strip() == "":
        return default
    try:
        threads = int(raw)
    except ValueError as e:
        raise ConfigurationError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from e
    if threads < 1:
        raise ConfigurationError(f"{THREADS_ENV_VAR} must be positive, got {threads}")
    return threads


def read_config_file(path: str) -> Dict[str, Any]:
    """
    Read a JSON config file.

    Raises:
        ConfigurationError: If the file is missing, unreadable or not a JSON object
    """
    config_path = Path(path)
    try:
        with open(config_path, "r") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise ConfigurationError(f"Config file not found: {config_path}") from e
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in {config_path}: {str(e)}")
        raise ConfigurationError(f"Invalid JSON in config file {config_path}: {str(e)}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"Config file {config_path} must contain a JSON object")
    return data


def _merge(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        elif value is not None:
            merged[key] = value
    return merged


def load_settings(
    config_path: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ExperimentSettings:
    """
    Build the run settings from defaults, environment, config file and flags.

    Args:
        config_path: Optional JSON config file
        overrides: Explicit flag values; None entries are ignored so the file wins

    Returns:
        Validated experiment settings

    Raises:
        ConfigurationError: If any layer supplies invalid values
    """
    data: Dict[str, Any] = {"threads": threads_from_env()}
    if config_path:
        data = _merge(data, read_config_file(config_path))
        logger.info(f"Loaded config file {config_path}")
    if overrides:
        data = _merge(data, overrides)
    try:
        return ExperimentSettings.model_validate(data)
    except ValidationError as e:
        logger.error(f"Invalid settings: {str(e)}")
        raise ConfigurationError(f"Invalid settings: {str(e)}") from e


def experiment_params(
    settings: ExperimentSettings,
    name: str,
    defaults: Dict[str, Any],
    flags: Dict[str, Any],
) -> Dict[str, Any]:
    """
    Resolve one experiment's parameters: defaults < config file < flags.

    Flags equal to None were not given on the command line.
    """
    params = dict(defaults)
    params.update(settings.experiments.get(name, {}))
    params.update({key: value for key, value in flags.items() if value is not None})
    unknown = set(params) - set(defaults)
    if unknown:
        raise ConfigurationError(f"Unknown parameters for {name}: {sorted(unknown)}")
    return params
